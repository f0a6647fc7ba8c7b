#pragma once

#include <string>
#include <vector>

#include "delaystab/crossings.hpp"
#include "delaystab/system.hpp"

namespace delaystab {

struct LocusSample {
  double tau = 0.0;
  cplx s;
};

enum class TrajectoryStatus { Complete, StepCollapse, LostRoot };

const char* to_string(TrajectoryStatus status) noexcept;

struct RootTrajectory {
  /// Ascending in tau.
  std::vector<LocusSample> samples;
  /// Index of the CrossingEvent this branch was born from, -1 if none.
  int birth_event = -1;
  double birth_tau = 0.0;
  /// Mirror image of another branch.
  bool conjugate = false;
  TrajectoryStatus status = TrajectoryStatus::Complete;
  /// Delays at which the branch met the real axis together with its mirror
  /// image. Past such a point it follows the rightmost of the two real roots.
  std::vector<double> collisions;
};

struct UnstablePoleSet {
  std::vector<cplx> poles;
  std::vector<int> multiplicities;
  /// |d / d_s d| at each pole, rounded up to a power of ten.
  std::vector<double> errors;
};

struct ContinuationOptions {
  int min_samples = 200;
  double min_step = 1e-9;
  /// Corrector stops at |d| < corrector_tol * residual_scale.
  double corrector_tol = 1e-12;
};

/// Follows the root of d(.; tau) through (tau0, s0) until tau1 with an Euler
/// predictor along ds/dtau and a Newton corrector. Steps are halved on
/// corrector failure. On failure the samples computed so far are returned and
/// status says why.
RootTrajectory continue_root(const DelaySystem& sys, double tau0, cplx s0, double tau1,
                             const ContinuationOptions& options = {});

struct RootLocus {
  std::vector<RootTrajectory> trajectories;
  UnstablePoleSet unstable;
  std::vector<std::string> warnings;
};

/// Continues every destabilizing crossing to the nominal delay (and one period
/// back for display) and clusters the endpoints into unstable poles.
/// Throws NeutralAxisInRHP for neutral systems whose chains are not strictly in
/// the left half-plane, StepCollapse / LostRoot if a forward branch fails.
RootLocus root_locus(const DelaySystem& sys, const StabilityReport& report,
                     double axis_tol = kAxisTol);
RootLocus root_locus(const DelaySystem& sys, const AnalysisOptions& options = {});

/// |d(s) / d_s d(s)| at the nominal delay, rounded up to a power of ten.
double pole_error_estimate(const DelaySystem& sys, cplx s);

}  // namespace delaystab
