#include "delaystab/polyroots.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "delaystab/error.hpp"

namespace delaystab {

namespace {

constexpr double kStripTol = 1e-12;
constexpr int kMaxPolish = 50;

double relative_residual(std::span<const cplx> c, cplx r) {
  const double denom = poly::abs_eval(c, std::abs(r));
  if (denom == 0.0) return 0.0;
  return std::abs(poly::eval(c, r)) / denom;
}

// Newton steps on the full polynomial; a step is kept only if it lowers |p|.
cplx polish(std::span<const cplx> c, cplx r) {
  cplx value, deriv;
  poly::eval_with_derivative(c, r, value, deriv);
  double best = std::abs(value);
  for (int it = 0; it < kMaxPolish && best > 0.0; ++it) {
    if (deriv == cplx(0.0)) break;
    const cplx candidate = r - value / deriv;
    cplx cv, cd;
    poly::eval_with_derivative(c, candidate, cv, cd);
    if (!(std::abs(cv) < best)) break;
    r = candidate;
    value = cv;
    deriv = cd;
    best = std::abs(cv);
  }
  return r;
}

}  // namespace

PolyRoots poly_roots(std::span<const cplx> coeffs) {
  double cmax = 0.0;
  for (const cplx& v : coeffs) cmax = std::max(cmax, std::abs(v));
  if (cmax == 0.0) throw Error(ErrorCode::ZeroPolynomial, "all coefficients are zero");

  std::size_t first = 0;
  while (std::abs(coeffs[first]) < kStripTol * cmax) ++first;
  const std::span<const cplx> c = coeffs.subspan(first);

  PolyRoots out;
  // exact zero roots from vanishing trailing coefficients
  std::size_t last = c.size();
  while (last > 1 && c[last - 1] == cplx(0.0)) {
    --last;
    out.roots.emplace_back(0.0);
  }
  const std::span<const cplx> core = c.first(last);
  const Eigen::Index degree = static_cast<Eigen::Index>(core.size()) - 1;

  if (degree == 1) {
    out.roots.push_back(-core[1] / core[0]);
  } else if (degree > 1) {
    // s = rho t with rho = |c_n / c_0|^(1/n) equilibrates the companion matrix
    const double rho = std::pow(std::abs(core[static_cast<std::size_t>(degree)] / core[0]),
                                1.0 / static_cast<double>(degree));
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    double pw = 1.0;
    for (Eigen::Index j = 1; j <= degree; ++j) {
      pw *= rho;
      companion(0, j - 1) = -core[static_cast<std::size_t>(j)] / (core[0] * pw);
    }
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    for (Eigen::Index i = 0; i < degree; ++i) out.roots.push_back(rho * solver.eigenvalues()(i));
  }

  for (cplx& r : out.roots) {
    if (r != cplx(0.0)) r = polish(c, r);
    out.residuals.push_back(relative_residual(c, r));
  }
  return out;
}

PolyRoots poly_roots(std::span<const double> coeffs) {
  std::vector<cplx> c(coeffs.begin(), coeffs.end());
  return poly_roots(std::span<const cplx>(c));
}

}  // namespace delaystab
