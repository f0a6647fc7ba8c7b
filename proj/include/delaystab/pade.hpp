#pragma once

// Rational approximation of
//
//   G(s) = (P_0(s) + sum_k P_k(s) exp(-n_k tau s)) / (s + 1)^delta
//
// obtained by replacing every exponential with a diagonal Pade approximant.

#include <vector>

#include "delaystab/system.hpp"

namespace delaystab {

enum class PadeMode { Order, Norm };

struct PadeRequest {
  DelaySystem sys;
  int delta = 0;
  PadeMode mode = PadeMode::Order;
  /// Order m in Order mode, error cap in Norm mode.
  double mod_arg = 1.0;
};

struct PadeResult {
  RealPoly num_approx;
  RealPoly den_approx;
  /// sup |G - G_hat| / sup |G| on the imaginary axis.
  double error_norm = 0.0;
  /// sup |G - G_hat| on the imaginary axis.
  double abs_error = 0.0;
  int pade_order = 0;
};

/// N_q(-x) and N_q(x), normalized so that N_q(0) = 1, highest power first.
std::pair<RealPoly, RealPoly> pade_exp(int q);

/// N_q(x) scaled to integer coefficients: the x^j coefficient is
/// (2q - j)! / (j! (q - j)!). Highest power first.
RealPoly pade_exp_integer(int q);

/// Approximation of order m (exponential approximants of degree q = 2m), with
/// its error norm.
PadeResult pade_of_order(const DelaySystem& sys, int delta, int m);

/// Order mode returns pade_of_order(mod_arg); norm mode the first m in 1..25
/// whose error_norm is at most mod_arg.
/// Throws FractionalUnsupported, DeltaTooSmall, BadRequest, UnstableApprox,
/// PoleOnAxis.
PadeResult compute_pade(const PadeRequest& req);

struct HinfError {
  double absolute = 0.0;
  /// sup |G| over the same frequencies.
  double reference = 0.0;
  double relative = 0.0;
};

/// Sampled H-infinity norm of G - num/den: 2048 log-spaced frequencies on
/// [1e-4, 1e4] plus omega = 0, the five largest local maxima refined by
/// golden-section search. Throws PoleOnAxis when den has a root within 1e-9
/// of the imaginary axis.
HinfError hinf_error(const DelaySystem& sys, int delta, const RealPoly& num, const RealPoly& den);

}  // namespace delaystab
