#pragma once

#include <string>
#include <vector>

#include "delaystab/system.hpp"

namespace delaystab {

/// Imaginary-axis tolerance used for every "on the axis" decision.
inline constexpr double kAxisTol = 1e-9;

enum class ChainKind { Retarded, Neutral };

const char* to_string(ChainKind kind) noexcept;

struct ChainClassification {
  ChainKind kind = ChainKind::Retarded;
  /// Neutral system that also has retarded chains (deg P_M < deg P_0).
  bool has_retarded_chains = false;
  /// No delayed terms at all.
  bool delay_free = false;
  /// Formal polynomial of the leading terms, ascending powers of z, [0] = 1.
  std::vector<double> cd_coeffs;
  /// Abscissas of the neutral asymptotic axes, ascending; empty if retarded.
  std::vector<double> axes;
};

ChainClassification system_type(const DelaySystem& sys);

/// [1, a_1, ..., a_{n_M}] with a_{n_k} = lead(P_k) / lead(P_0) when
/// deg P_k = deg P_0 and 0 otherwise.
std::vector<double> formal_cd(const DelaySystem& sys);

/// -ln|z_r| / tau for each root z_r of the formal polynomial, merged within
/// 1e-9 and sorted. Throws NotNeutral for retarded systems.
std::vector<double> neutral_axes(const DelaySystem& sys);

/// Same, for explicit formal-polynomial coefficients (ascending powers).
std::vector<double> axes_from_cd(const std::vector<double>& cd_coeffs, double tau);

/// kind, flags, formal polynomial and (for neutral systems) axes together.
ChainClassification classify(const DelaySystem& sys);

struct ZeroDelayRoots {
  std::vector<cplx> roots;
  /// Roots within 1e-9 of the principal-sheet sector edge; kept out of `roots`.
  std::vector<std::string> warnings;
};

/// Roots of d(s; 0) on the principal sheet. Throws DegenerateSum when the
/// column-sum polynomial vanishes identically.
ZeroDelayRoots zero_delay_roots(const DelaySystem& sys);

/// Number of zero-delay roots with Re s >= -axis_tol.
int zero_delay_unstable_count(const DelaySystem& sys, double axis_tol = kAxisTol);

}  // namespace delaystab
