#include <catch_amalgamated.hpp>

#include <random>

#include "delaystab/error.hpp"
#include "delaystab/pade.hpp"
#include "oracles.hpp"

using namespace delaystab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DelaySystem fixture() { return validate_system({{1, 2}, {0, -1}}, {1}, 1.0, 1.0); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::BadRequest;
}

}  // namespace

TEST_CASE("low-order exponential approximants", "[pade]") {
  const auto [n1, d1] = pade_exp(1);
  CHECK(n1 == RealPoly{-0.5, 1.0});
  CHECK(d1 == RealPoly{0.5, 1.0});

  const auto [n2, d2] = pade_exp(2);
  REQUIRE(n2.size() == 3);
  CHECK_THAT(n2[0], WithinRel(1.0 / 12, 1e-15));
  CHECK(n2[1] == -0.5);
  CHECK(d2[1] == 0.5);
  CHECK(pade_exp_integer(2) == RealPoly{1, 6, 12});

  for (int q = 1; q <= 8; ++q) CHECK(pade_exp(q).second.back() == 1.0);
}

TEST_CASE("approximant matches the exponential series through degree 2q", "[pade][property]") {
  for (int q = 1; q <= 4; ++q) {
    const RealPoly integer = pade_exp_integer(q);
    std::vector<oracle::Rational> nq;
    for (auto it = integer.rbegin(); it != integer.rend(); ++it) {
      REQUIRE(*it == std::round(*it));
      nq.emplace_back(static_cast<std::int64_t>(*it));
    }
    const auto defect = oracle::pade_defect(nq, 2 * q + 1);
    for (int k = 0; k <= 2 * q; ++k) CHECK(defect[k].numerator() == 0);
    CHECK(defect[2 * q + 1].numerator() != 0);

    // normalized form is the integer form divided by its constant term
    const RealPoly den = pade_exp(q).second;
    for (std::size_t j = 0; j < den.size(); ++j)
      CHECK_THAT(den[j], WithinRel(integer[j] / integer.back(), 1e-14));
  }
}

TEST_CASE("diagonal approximants are all-pass", "[pade][property]") {
  for (int q = 1; q <= 6; ++q) {
    const auto [num, den] = pade_exp(q);
    for (double w : {0.01, 0.3, 1.0, 4.0, 30.0, 500.0}) {
      const cplx x(0.0, w);
      CHECK_THAT(std::abs(poly::eval(num, x) / poly::eval(den, x)), WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("first-order approximation of s + 2 - exp(-s)", "[pade]") {
  const PadeResult r = compute_pade({fixture(), 2, PadeMode::Order, 1.0});
  CHECK(r.num_approx == RealPoly{1, 9, 45, 79, 54, 12});
  CHECK(r.den_approx == RealPoly{1, 10, 42, 88, 97, 54, 12});
  CHECK(r.pade_order == 1);
  CHECK_THAT(r.error_norm, WithinRel(0.032917024033214635, 1e-4));
}

TEST_CASE("expansion identity of the fixture", "[pade]") {
  // (s + 2)(s + 1)^2 (s^2 + 6s + 12) - (s^2 - 6s + 12)(s + 1)^2
  const RealPoly lag = poly::binomial_power(1.0, 2);
  const RealPoly a = poly::multiply(poly::multiply(RealPoly{1, 2}, lag), RealPoly{1, 6, 12});
  const RealPoly b = poly::multiply(RealPoly{1, -6, 12}, lag);
  CHECK(poly::add(a, poly::scale(b, -1.0)) == RealPoly{1, 9, 45, 79, 54, 12});
  CHECK(poly::multiply(poly::binomial_power(1.0, 4), RealPoly{1, 6, 12}) ==
        RealPoly{1, 10, 42, 88, 97, 54, 12});
}

TEST_CASE("denominator is divisible by the lag factor", "[pade][property]") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = oracle::random_system(rng, 3, 2, 3, false);
    const DelaySystem sys = validate_system(r.p, r.n, r.tau, 1.0);
    const int delta = sys.degree() + 1 + trial % 2;
    const PadeResult res = pade_of_order(sys, delta, 1 + trial % 2);
    RealPoly q, rem;
    poly::divide(res.den_approx, poly::binomial_power(1.0, delta), q, rem);
    double scale = 0.0;
    for (double c : res.den_approx) scale = std::max(scale, std::abs(c));
    for (double c : rem) CHECK(std::abs(c) < 1e-9 * scale);
  }
}

TEST_CASE("error norm does not increase with the order", "[pade][property]") {
  double last = 1e300;
  for (int m = 1; m <= 3; ++m) {
    const PadeResult r = pade_of_order(fixture(), 2, m);
    CHECK(r.error_norm < last);
    last = r.error_norm;
  }
  CHECK(last < 0.25 * pade_of_order(fixture(), 2, 1).error_norm);
}

TEST_CASE("norm mode returns the first adequate order", "[pade]") {
  const PadeResult r = compute_pade({fixture(), 2, PadeMode::Norm, 0.04});
  CHECK(r.pade_order == 1);
  const PadeResult tighter = compute_pade({fixture(), 2, PadeMode::Norm, 1e-3});
  CHECK(tighter.pade_order >= 2);
  CHECK(tighter.error_norm <= 1e-3);
}

TEST_CASE("delay-free systems are reproduced exactly", "[pade]") {
  const DelaySystem sys = validate_system({{1, 3, 2}}, {}, 1.0, 1.0);
  const PadeResult r = compute_pade({sys, 3, PadeMode::Order, 1.0});
  CHECK(r.error_norm < 1e-12);
}

TEST_CASE("invalid Pade requests", "[pade]") {
  CHECK(code_of([] { compute_pade({oracle::example2(), 3, PadeMode::Order, 1.0}); }) ==
        ErrorCode::FractionalUnsupported);
  CHECK(code_of([] { compute_pade({fixture(), 1, PadeMode::Order, 1.0}); }) == ErrorCode::DeltaTooSmall);
  CHECK(code_of([] { compute_pade({fixture(), 2, PadeMode::Order, 1.5}); }) == ErrorCode::BadRequest);
  CHECK(code_of([] { compute_pade({fixture(), 2, PadeMode::Norm, 0.0}); }) == ErrorCode::BadRequest);
  CHECK(code_of([] { compute_pade({fixture(), 2, PadeMode::Norm, 1e-300}); }) ==
        ErrorCode::UnstableApprox);
  CHECK(code_of([] { hinf_error(fixture(), 2, {1.0}, {1.0, 0.0, 1.0}); }) == ErrorCode::PoleOnAxis);
}
