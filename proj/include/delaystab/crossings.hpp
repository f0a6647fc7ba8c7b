#pragma once

// Imaginary-axis crossings of characteristic roots as the delay sweeps (0, tau].
//
// At s = j omega the quasi-polynomial is a polynomial in z = exp(-j omega tau):
//
//   D_omega(z) = P_0((j omega)^alpha) + sum_k P_k((j omega)^alpha) z^{n_k}
//
// A crossing happens at frequency omega iff D_omega has a root on the unit
// circle; its argument fixes the delays tau_first + m 2 pi / omega.

#include <optional>
#include <string>
#include <vector>

#include "delaystab/classify.hpp"
#include "delaystab/system.hpp"

namespace delaystab {

struct AnalysisOptions {
  /// Upper end of the frequency scan; default_omega_max() when unset.
  std::optional<double> omega_max;
  /// Tolerance for "on the imaginary axis" decisions.
  double axis_tol = kAxisTol;
  int grid_points = 4000;
};

struct CrossingEvent {
  double omega = 0.0;
  /// exp(-j omega tau_first), on the unit circle.
  cplx z_star;
  double tau_first = 0.0;
  double period = 0.0;
  /// +1 left to right, -1 right to left, 0 tangential.
  int direction = 0;
};

/// One row of the enumerated crossings: delay, signed frequency, direction.
struct ImaginaryRoot {
  double tau = 0.0;
  double omega = 0.0;
  int direction = 0;
};

struct UnitCircleGap {
  double gap = 0.0;
  /// Roots of D_omega within 1e-3 of the unit circle.
  std::vector<cplx> candidates;
};

/// Coefficients of D_omega, highest power of z first.
std::vector<cplx> delay_polynomial(const DelaySystem& sys, double omega);

/// min_i ||z_i| - 1| over the roots of D_omega. Throws DegenerateAtOmega when
/// D_omega vanishes identically.
UnitCircleGap unit_circle_gap(const DelaySystem& sys, double omega);

/// 2 (1 + max_k sum_j |p_kj| / |p_0n|)^(1 / alpha)
double default_omega_max(const DelaySystem& sys);

struct CrossingScan {
  std::vector<CrossingEvent> events;
  std::vector<std::string> warnings;
  double omega_max = 0.0;
};

/// All crossing frequencies in (0, omega_max], one event per unit-circle
/// root, sorted by tau_first. Each event is polished by Newton's method on
/// d(j omega; tau) = 0 in the two real unknowns (omega, tau).
CrossingScan find_crossings(const DelaySystem& sys, double omega_max, int grid_points = 4000);

/// Sign of Re(ds/dtau) at s = j omega, tau = tau_star; 0 when below 1e-10.
/// Throws StationaryPoint when dd/ds vanishes.
int crossing_direction(const DelaySystem& sys, double omega, double tau_star);

/// Every crossing delay tau_m = tau_first + m period <= sys.tau(), as a pair of
/// rows (+omega, -omega), sorted by delay then by descending frequency.
std::vector<ImaginaryRoot> imaginary_roots(const DelaySystem& sys,
                                           const std::vector<CrossingEvent>& events);

struct WindowsReport {
  /// Breakpoints where the stability flag changes; first 0, last tau.
  std::vector<double> window_breakpoints;
  /// Flag of the window opening at each breakpoint; the final entry is 0.
  std::vector<int> window_flags;
  /// Every crossing delay; first 0, last tau.
  std::vector<double> count_breakpoints;
  /// Unstable-root count on the window opening at each breakpoint.
  std::vector<int> counts;
  std::vector<std::string> warnings;
};

/// Piecewise unstable-root count from precomputed pieces. Throws NegativeCount.
WindowsReport stability_windows(const DelaySystem& sys, const ChainClassification& chains,
                                const std::vector<ImaginaryRoot>& imaginary, int zero_delay_count,
                                double axis_tol = kAxisTol);

WindowsReport stability_windows(const DelaySystem& sys, const AnalysisOptions& options = {});

struct StabilityReport {
  ChainClassification chains;
  ZeroDelayRoots zero_delay;
  CrossingScan crossings;
  std::vector<ImaginaryRoot> imaginary;
  WindowsReport windows;
  /// Unstable-root count at the nominal delay (meaningless when !axes_stable).
  int unstable_count = 0;
  /// Retarded, or every neutral axis strictly left of -axis_tol.
  bool axes_stable = true;
  bool stable = false;
  std::string verdict;
  std::vector<std::string> warnings;
};

StabilityReport analyze(const DelaySystem& sys, const AnalysisOptions& options = {});

}  // namespace delaystab
