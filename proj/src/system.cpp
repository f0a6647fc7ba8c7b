#include "delaystab/system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "delaystab/error.hpp"

namespace delaystab {

namespace {

bool all_finite(const CoeffMatrix& m) {
  for (const auto& row : m)
    for (double v : row)
      if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

DelaySystem validate_system(CoeffMatrix coeffs, std::vector<int> delay_multiples, double tau,
                            double alpha) {
  if (coeffs.empty() || coeffs.front().empty())
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix is empty");

  const std::size_t width = coeffs.front().size();
  const int n = static_cast<int>(width) - 1;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    if (coeffs[k].size() == width) continue;
    if (coeffs[k].size() > width && poly::degree(coeffs[k]) > n)
      throw Error(ErrorCode::DegreeExcess,
                  "row " + std::to_string(k) + " has degree above deg P_0 (advanced type)");
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix is not rectangular");
  }
  if (delay_multiples.size() + 1 != coeffs.size())
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(coeffs.size() - 1) + " delay multiples, got " +
                    std::to_string(delay_multiples.size()));

  if (!(tau > 0.0) || !std::isfinite(tau))
    throw Error(ErrorCode::BadScalar, "tau must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::BadScalar, "alpha must lie in (0, 1]");
  if (!all_finite(coeffs)) throw Error(ErrorCode::BadScalar, "coefficients must be finite");

  if (coeffs.front().front() == 0.0)
    throw Error(ErrorCode::LeadingZero, "leading coefficient of P_0 is zero");

  for (std::size_t k = 0; k < delay_multiples.size(); ++k) {
    if (delay_multiples[k] <= 0)
      throw Error(ErrorCode::BadMultiples, "delay multiples must be positive");
    if (k > 0 && delay_multiples[k] <= delay_multiples[k - 1])
      throw Error(ErrorCode::BadMultiples, "delay multiples must be strictly increasing");
    if (poly::degree(coeffs[k + 1]) < 0)
      throw Error(ErrorCode::BadMultiples,
                  "row " + std::to_string(k + 1) + " is identically zero; omit its multiple");
  }

  DelaySystem sys;
  sys.coeffs_ = std::move(coeffs);
  sys.multiples_ = std::move(delay_multiples);
  sys.tau_ = tau;
  sys.alpha_ = alpha;
  for (const auto& row : sys.coeffs_) {
    sys.row_degrees_.push_back(poly::degree(row));
    for (double v : row) sys.coeff_scale_ = std::max(sys.coeff_scale_, std::abs(v));
  }
  return sys;
}

DelaySystem DelaySystem::with_tau(double tau) const {
  return validate_system(coeffs_, multiples_, tau, alpha_);
}

cplx principal_power(cplx s, double alpha) {
  if (alpha == 1.0) return s;
  if (s == cplx(0.0)) return 0.0;
  const double arg = std::atan2(s.imag(), s.real());
  if (arg == -std::numbers::pi)
    throw Error(ErrorCode::BranchCut, "Arg s = -pi lies off the principal sheet");
  return std::polar(std::pow(std::abs(s), alpha), alpha * arg);
}

cplx eval_d(const DelaySystem& sys, cplx s, double tau) {
  const cplx sigma = principal_power(s, sys.alpha());
  const auto& rows = sys.coeffs();
  cplx acc = poly::eval(rows[0], sigma);
  for (int k = 0; k < sys.delayed_rows(); ++k) {
    const double nk = sys.delay_multiples()[static_cast<std::size_t>(k)];
    acc += poly::eval(rows[static_cast<std::size_t>(k) + 1], sigma) * std::exp(-nk * tau * s);
  }
  return acc;
}

double residual_scale(const DelaySystem& sys, cplx s, double tau) {
  const double abs_sigma = std::pow(std::abs(s), sys.alpha());
  const auto& rows = sys.coeffs();
  double acc = poly::abs_eval(rows[0], abs_sigma);
  for (int k = 0; k < sys.delayed_rows(); ++k) {
    const double nk = sys.delay_multiples()[static_cast<std::size_t>(k)];
    acc += poly::abs_eval(rows[static_cast<std::size_t>(k) + 1], abs_sigma) *
           std::exp(-nk * tau * s.real());
  }
  return acc;
}

Evaluation eval_d_full(const DelaySystem& sys, cplx s, double tau) {
  cplx dsigma_ds = 1.0;
  const cplx sigma = principal_power(s, sys.alpha());
  if (sys.is_fractional()) {
    if (s == cplx(0.0))
      throw Error(ErrorCode::SingularPoint, "d/ds of s^alpha is singular at s = 0");
    dsigma_ds = sys.alpha() * sigma / s;
  }

  const auto& rows = sys.coeffs();
  cplx value, deriv;
  poly::eval_with_derivative(rows[0], sigma, value, deriv);
  cplx poly_deriv_sum = deriv;
  cplx delay_term = 0.0;  // sum_k n_k P_k(sigma) e_k
  for (int k = 0; k < sys.delayed_rows(); ++k) {
    const double nk = sys.delay_multiples()[static_cast<std::size_t>(k)];
    const cplx e = std::exp(-nk * tau * s);
    cplx pk, dpk;
    poly::eval_with_derivative(rows[static_cast<std::size_t>(k) + 1], sigma, pk, dpk);
    value += pk * e;
    poly_deriv_sum += dpk * e;
    delay_term += nk * pk * e;
  }
  Evaluation out;
  out.value = value;
  out.partials.d_ds = dsigma_ds * poly_deriv_sum - tau * delay_term;
  out.partials.d_dtau = -s * delay_term;
  return out;
}

Partials eval_d_partials(const DelaySystem& sys, cplx s, double tau) {
  return eval_d_full(sys, s, tau).partials;
}

DelaySystem from_state_space(const StateSpacePair& pair) {
  const Eigen::Index n = pair.A0.rows();
  if (n == 0 || pair.A0.cols() != n || pair.A1.rows() != n || pair.A1.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "A0 and A1 must be square and of equal size");

  const Eigen::Index m = n + 1;
  Eigen::VectorXd nodes(m);
  for (Eigen::Index i = 0; i < m; ++i)
    nodes(i) = std::cos((2.0 * static_cast<double>(i) + 1.0) * std::numbers::pi /
                        (2.0 * static_cast<double>(m)));

  // F(i, j) = det(s_i I - A0 - A1 z_j), same Chebyshev nodes on both axes
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd values(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      values(i, j) = (nodes(i) * eye - pair.A0 - pair.A1 * nodes(j)).determinant();

  Eigen::MatrixXd vander(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double p = 1.0;
    for (Eigen::Index a = 0; a < m; ++a) {
      vander(i, a) = p;
      p *= nodes(i);
    }
  }
  // values = V C V^T  =>  C = V^{-1} values V^{-T}
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(vander);
  const Eigen::MatrixXd left = lu.solve(values);
  const Eigen::MatrixXd c = lu.solve(left.transpose()).transpose();

  const double cutoff = 1e-12 * c.cwiseAbs().maxCoeff();

  CoeffMatrix rows;
  std::vector<int> multiples;
  for (Eigen::Index b = 0; b < m; ++b) {
    std::vector<double> row(static_cast<std::size_t>(m));
    bool nonzero = false;
    for (Eigen::Index a = 0; a < m; ++a) {
      double v = c(n - a, b);
      if (std::abs(v) <= cutoff) v = 0.0;
      row[static_cast<std::size_t>(a)] = v;
      nonzero = nonzero || v != 0.0;
    }
    if (b == 0) {
      rows.push_back(std::move(row));
    } else if (nonzero) {
      rows.push_back(std::move(row));
      multiples.push_back(static_cast<int>(b));
    }
  }
  return validate_system(std::move(rows), std::move(multiples), pair.tau, 1.0);
}

}  // namespace delaystab
