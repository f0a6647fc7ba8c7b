#include <catch_amalgamated.hpp>

#include <random>

#include "delaystab/error.hpp"
#include "delaystab/polyroots.hpp"

using namespace delaystab;

namespace {

bool contains(const std::vector<cplx>& roots, cplx want, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](cplx r) { return std::abs(r - want) < tol; });
}

}  // namespace

TEST_CASE("zero-delay polynomial of the first example", "[polyroots]") {
  const std::vector<double> c{1, 43.0 / 10, 83.0 / 20, 71.0 / 60};
  const PolyRoots r = poly_roots(c);
  REQUIRE(r.roots.size() == 3);
  CHECK(contains(r.roots, {-3.07585975, 0.0}, 1e-6));
  CHECK(contains(r.roots, {-0.61207012, 0.10043131}, 1e-6));
  CHECK(contains(r.roots, {-0.61207012, -0.10043131}, 1e-6));
}

TEST_CASE("small closed-form cases", "[polyroots]") {
  const PolyRoots lin = poly_roots(std::vector<double>{-1.0 / 6, 1.0});
  REQUIRE(lin.roots.size() == 1);
  CHECK(std::abs(lin.roots[0] - 6.0) < 1e-14);

  const PolyRoots quad = poly_roots(std::vector<double>{1, 0, 1});
  REQUIRE(quad.roots.size() == 2);
  CHECK(contains(quad.roots, {0, 1}, 1e-14));
  CHECK(contains(quad.roots, {0, -1}, 1e-14));

  CHECK(poly_roots(std::vector<double>{0, 0, 5}).roots.empty());
  CHECK_THROWS_AS(poly_roots(std::vector<double>{0, 0}), Error);

  const PolyRoots zeros = poly_roots(std::vector<double>{1, -1, 0, 0});
  CHECK(zeros.roots.size() == 3);
  CHECK(contains(zeros.roots, 1.0, 1e-14));
}

TEST_CASE("tiny leading coefficients are stripped", "[polyroots]") {
  const PolyRoots r = poly_roots(std::vector<double>{1e-15, 1, -2});
  REQUIRE(r.roots.size() == 1);
  CHECK(std::abs(r.roots[0] - 2.0) < 1e-12);
}

TEST_CASE("Vieta relations on random polynomials", "[polyroots][property]") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 12;
    std::vector<double> c(n + 1);
    for (double& v : c) v = u(rng);
    if (std::abs(c[0]) < 0.05) c[0] = 0.5;
    if (std::abs(c[n]) < 0.05) c[n] = -0.5;
    const PolyRoots r = poly_roots(c);
    REQUIRE(r.roots.size() == static_cast<std::size_t>(n));

    cplx sum = 0.0, prod = 1.0;
    for (const cplx& z : r.roots) {
      sum += z;
      prod *= z;
    }
    const double want_sum = -c[1] / c[0];
    const double want_prod = (n % 2 == 0 ? 1.0 : -1.0) * c[n] / c[0];
    CHECK(std::abs(sum - want_sum) <= 1e-6 * std::max(1.0, std::abs(want_sum)));
    CHECK(std::abs(prod - want_prod) <= 1e-6 * std::max(1.0, std::abs(want_prod)));
    for (double res : r.residuals) CHECK(res < 1e-8);
  }
}

TEST_CASE("conjugated coefficients give conjugated roots", "[polyroots][property]") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 8;
    std::vector<cplx> c(n + 1), cc(n + 1);
    for (int j = 0; j <= n; ++j) {
      c[j] = {u(rng), u(rng)};
      cc[j] = std::conj(c[j]);
    }
    c[0] = cc[0] = 1.0;
    const PolyRoots a = poly_roots(c);
    const PolyRoots b = poly_roots(cc);
    for (const cplx& z : a.roots) CHECK(contains(b.roots, std::conj(z), 1e-7));
    for (double res : a.residuals) CHECK(res < 1e-8);
  }
}

TEST_CASE("double roots appear as a cluster", "[polyroots]") {
  // (x - 1)^2 (x + 2)
  const PolyRoots r = poly_roots(std::vector<double>{1, 0, -3, 2});
  int near_one = 0;
  for (const cplx& z : r.roots)
    if (std::abs(z - 1.0) < 1e-6) ++near_one;
  CHECK(near_one == 2);
}
