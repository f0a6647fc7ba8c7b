#include <catch_amalgamated.hpp>

#include <random>

#include "delaystab/classify.hpp"
#include "delaystab/error.hpp"
#include "delaystab/polyroots.hpp"
#include "oracles.hpp"

using namespace delaystab;
using Catch::Matchers::WithinAbs;

TEST_CASE("chain type of the published systems", "[classify]") {
  const ChainClassification c1 = classify(oracle::example1());
  CHECK(c1.kind == ChainKind::Retarded);
  CHECK(c1.axes.empty());
  CHECK(c1.cd_coeffs == std::vector<double>{1, 0, 0, 0});

  const ChainClassification c2 = classify(oracle::example2());
  CHECK(c2.kind == ChainKind::Neutral);
  CHECK(c2.has_retarded_chains);
  REQUIRE(c2.cd_coeffs.size() == 4);
  CHECK_THAT(c2.cd_coeffs[1], WithinAbs(-1.0 / 6, 1e-15));
  CHECK(c2.cd_coeffs[2] == 0.0);
  CHECK(c2.cd_coeffs[3] == 0.0);
  REQUIRE(c2.axes.size() == 1);
  CHECK_THAT(c2.axes[0], WithinAbs(-0.71670379, 1e-8));
  CHECK(std::string(to_string(c2.kind)) == "Neutral");
}

TEST_CASE("delay-free and gap-multiple systems", "[classify]") {
  const ChainClassification free = classify(validate_system({{1, 1}}, {}, 1.0, 1.0));
  CHECK(free.kind == ChainKind::Retarded);
  CHECK(free.delay_free);

  CHECK(formal_cd(validate_system({{1, 0}, {1, 0}}, {2}, 1.0, 1.0)) == std::vector<double>{1, 0, 1});
}

TEST_CASE("neutral axes: closed forms", "[classify]") {
  const auto on_axis = axes_from_cd({1, 1}, 1.0);
  REQUIRE(on_axis.size() == 1);
  CHECK(std::abs(on_axis[0]) < 1e-12);

  const auto quarter = axes_from_cd({1, -0.25}, 2.0);
  REQUIRE(quarter.size() == 1);
  CHECK_THAT(quarter[0], WithinAbs(-std::log(4.0) / 2, 1e-14));

  try {
    neutral_axes(oracle::example1());
    FAIL("retarded system accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNeutral);
    CHECK(std::string(e.what()).find("Roots chains only computed for neutral systems") !=
          std::string::npos);
  }
}

TEST_CASE("neutral axes equal -ln|z|/tau for prescribed roots", "[classify][property]") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> mod(0.3, 8.0);
  std::uniform_real_distribution<double> ang(0.2, 2.9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cplx> roots;
    const int degree = 1 + trial % 4;
    while (static_cast<int>(roots.size()) < degree) {
      const double m = mod(rng);
      if (degree - roots.size() >= 2 && trial % 2 == 0) {
        roots.push_back(std::polar(m, ang(rng)));
        roots.push_back(std::conj(roots.back()));
      } else {
        roots.push_back(rng() % 2 ? m : -m);
      }
    }
    // prod (1 - z / r), ascending
    std::vector<cplx> cd{1.0};
    for (const cplx& r : roots) {
      std::vector<cplx> next(cd.size() + 1, 0.0);
      for (std::size_t i = 0; i < cd.size(); ++i) {
        next[i] += cd[i];
        next[i + 1] -= cd[i] / r;
      }
      cd = next;
    }
    std::vector<double> cdr;
    for (const cplx& c : cd) cdr.push_back(c.real());
    const double tau = 0.5 + trial * 0.03;

    std::vector<double> want;
    for (const cplx& r : roots) want.push_back(-std::log(std::abs(r)) / tau);
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end(), [](double a, double b) { return b - a < 1e-9; }),
               want.end());

    const auto got = axes_from_cd(cdr, tau);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10);
  }
}

TEST_CASE("classification is invariant under positive scaling", "[classify][property]") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    auto r = oracle::random_system(rng, 4, 3, 4, false);
    const ChainClassification a = classify(validate_system(r.p, r.n, r.tau, 1.0));
    for (auto& row : r.p)
      for (double& v : row) v *= 3.7;
    const ChainClassification b = classify(validate_system(r.p, r.n, r.tau, 1.0));
    CHECK(a.kind == b.kind);
    CHECK(a.has_retarded_chains == b.has_retarded_chains);
    REQUIRE(a.axes.size() == b.axes.size());
    for (std::size_t i = 0; i < a.axes.size(); ++i) CHECK(std::abs(a.axes[i] - b.axes[i]) < 1e-12);
  }
}

TEST_CASE("zero-delay roots", "[classify]") {
  const ZeroDelayRoots z1 = zero_delay_roots(oracle::example1());
  REQUIRE(z1.roots.size() == 3);
  CHECK(std::abs(z1.roots[0] - cplx(-3.07585975, 0.0)) < 1e-6);
  CHECK(std::abs(z1.roots[1] - cplx(-0.61207012, 0.10043131)) < 1e-6);
  CHECK(std::abs(z1.roots[2] - cplx(-0.61207012, -0.10043131)) < 1e-6);
  CHECK(zero_delay_unstable_count(oracle::example1()) == 0);

  CHECK(zero_delay_roots(oracle::example2()).roots.empty());
  CHECK(zero_delay_unstable_count(oracle::example2()) == 0);

  const DelaySystem unstable = validate_system({{1, -1}}, {}, 1.0, 1.0);
  REQUIRE(zero_delay_roots(unstable).roots.size() == 1);
  CHECK(zero_delay_unstable_count(unstable) == 1);

  CHECK_THROWS_AS(zero_delay_roots(validate_system({{1, 1}, {-1, -1}}, {1}, 1.0, 1.0)), Error);
}

TEST_CASE("fractional zero-delay roots lie in the admissible sector", "[classify]") {
  // sigma^2 + 1: sigma = +-j, |Arg| = pi/2 < 0.8 pi, so s = sigma^(1/0.8)
  const ZeroDelayRoots z = zero_delay_roots(validate_system({{1, 0, 1}}, {}, 1.0, 0.8));
  REQUIRE(z.roots.size() == 2);
  for (const cplx& s : z.roots)
    CHECK(std::abs(std::pow(s, 0.8) * std::pow(s, 0.8) + 1.0) < 1e-12);
  // alpha = 0.5 puts them on the sector edge: warned, not kept
  const ZeroDelayRoots edge = zero_delay_roots(validate_system({{1, 0, 1}}, {}, 1.0, 0.5));
  CHECK(edge.roots.empty());
  CHECK(edge.warnings.size() == 2);
}

TEST_CASE("zero-delay roots equal the column-sum roots for alpha = 1", "[classify][property]") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = oracle::random_system(rng, 5, 3, 4, false);
    const DelaySystem sys = validate_system(r.p, r.n, r.tau, 1.0);
    std::vector<double> sum(r.p[0].size(), 0.0);
    for (const auto& row : r.p)
      for (std::size_t j = 0; j < row.size(); ++j) sum[j] += row[j];
    const auto want = poly_roots(sum).roots;
    const auto got = zero_delay_roots(sys).roots;
    REQUIRE(got.size() == want.size());
    for (const cplx& w : want)
      CHECK(std::any_of(got.begin(), got.end(), [&](cplx g) { return std::abs(g - w) < 1e-8; }));
  }
}
