#pragma once

// Characteristic quasi-polynomial of a linear system with commensurate delays:
//
//   d(s; tau) = P_0(s^alpha) + sum_k P_k(s^alpha) exp(-n_k tau s)
//
// Row k of the coefficient matrix holds P_k as a polynomial in sigma = s^alpha,
// highest power first. All rows have the same length n + 1.

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "delaystab/poly.hpp"

namespace delaystab {

using CoeffMatrix = std::vector<std::vector<double>>;

class DelaySystem {
 public:
  const CoeffMatrix& coeffs() const noexcept { return coeffs_; }
  const std::vector<int>& delay_multiples() const noexcept { return multiples_; }
  double tau() const noexcept { return tau_; }
  double alpha() const noexcept { return alpha_; }

  /// Degree n of P_0 in sigma.
  int degree() const noexcept { return static_cast<int>(coeffs_.front().size()) - 1; }
  /// Number M of delayed rows.
  int delayed_rows() const noexcept { return static_cast<int>(multiples_.size()); }
  /// Largest delay multiple n_M, 0 when delay-free.
  int max_multiple() const noexcept { return multiples_.empty() ? 0 : multiples_.back(); }
  /// Degree of row k (-1 if identically zero, which validation excludes).
  int row_degree(int k) const noexcept { return row_degrees_[static_cast<std::size_t>(k)]; }
  bool is_delay_free() const noexcept { return multiples_.empty(); }
  bool is_fractional() const noexcept { return alpha_ < 1.0; }

  /// max_k max_j |p_kj|
  double coeff_scale() const noexcept { return coeff_scale_; }

  /// Same data with another nominal delay.
  DelaySystem with_tau(double tau) const;

 private:
  friend DelaySystem validate_system(CoeffMatrix, std::vector<int>, double, double);

  DelaySystem() = default;

  CoeffMatrix coeffs_;
  std::vector<int> multiples_;
  std::vector<int> row_degrees_;
  double tau_ = 1.0;
  double alpha_ = 1.0;
  double coeff_scale_ = 0.0;
};

struct StateSpacePair {
  Eigen::MatrixXd A0;
  Eigen::MatrixXd A1;
  double tau = 1.0;
};

/// Checks the invariants of the model and returns an immutable system.
/// Coefficients are kept exactly as given. A single row with no multiples is
/// accepted as a delay-free system.
/// Throws Error with LeadingZero, DegreeExcess, BadMultiples, BadScalar or
/// DimensionMismatch.
DelaySystem validate_system(CoeffMatrix coeffs, std::vector<int> delay_multiples, double tau,
                            double alpha);

/// Principal branch |s|^alpha exp(i alpha Arg s), Arg in (-pi, pi].
/// Throws BranchCut for alpha < 1 when Arg s evaluates to exactly -pi.
cplx principal_power(cplx s, double alpha);

/// d(s; tau)
cplx eval_d(const DelaySystem& sys, cplx s, double tau);

/// Sum over all terms of |p_kj| |sigma|^j |exp(-n_k tau s)|: the size of the
/// terms that cancel in d, used to normalize residuals.
double residual_scale(const DelaySystem& sys, cplx s, double tau);

struct Partials {
  cplx d_ds;
  cplx d_dtau;
};

/// (dd/ds, dd/dtau). Throws SingularPoint at s = 0 when alpha < 1.
Partials eval_d_partials(const DelaySystem& sys, cplx s, double tau);

/// d(s; tau) and its partials in one pass.
struct Evaluation {
  cplx value;
  Partials partials;
};
Evaluation eval_d_full(const DelaySystem& sys, cplx s, double tau);

/// det(sI - A0 - A1 z) collected by powers of z, computed by interpolation on
/// Chebyshev nodes. Rows that vanish are dropped; alpha = 1.
DelaySystem from_state_space(const StateSpacePair& pair);

}  // namespace delaystab
