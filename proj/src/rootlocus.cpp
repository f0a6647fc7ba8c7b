#include "delaystab/rootlocus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "delaystab/error.hpp"
#include "delaystab/parallel.hpp"

namespace delaystab {

namespace {

constexpr double kClusterRadius = 1e-5;
constexpr int kMaxCorrector = 12;

struct Corrected {
  cplx s;
  int iterations = 0;
  bool converged = false;
};

Corrected newton(const DelaySystem& sys, cplx s, double tau, double tol) {
  Corrected out{s, 0, false};
  try {
    for (int it = 0; it <= kMaxCorrector; ++it) {
      const Evaluation ev = eval_d_full(sys, out.s, tau);
      if (std::abs(ev.value) <= tol * residual_scale(sys, out.s, tau)) {
        out.converged = true;
        return out;
      }
      if (it == kMaxCorrector || ev.partials.d_ds == cplx(0.0)) break;
      out.s -= ev.value / ev.partials.d_ds;
      out.iterations = it + 1;
      if (!std::isfinite(out.s.real()) || !std::isfinite(out.s.imag())) break;
    }
  } catch (const Error&) {
    // singular point or branch cut: treat as a failed correction
  }
  out.converged = false;
  return out;
}

// Real roots of d(.; tau) near s, found by Newton from a fan of real starts;
// returns the rightmost one.
std::optional<cplx> rightmost_real_root(const DelaySystem& sys, cplx s, double tau, double tol) {
  const double radius = 0.05 * std::max(1.0, std::abs(s));
  std::optional<cplx> best;
  for (int j = -8; j <= 8; ++j) {
    const double x0 = s.real() + radius * j / 8.0;
    if (sys.is_fractional() && x0 <= 0.0) continue;
    const Corrected c = newton(sys, cplx(x0, 0.0), tau, tol);
    if (!c.converged) continue;
    if (std::abs(c.s.imag()) > 1e-10 * std::max(1.0, std::abs(c.s))) continue;
    if (std::abs(c.s - s) > radius) continue;
    const cplx r(c.s.real(), 0.0);
    if (!best || r.real() > best->real()) best = r;
  }
  return best;
}

bool is_real(cplx s) { return std::abs(s.imag()) <= 1e-10 * std::max(1.0, std::abs(s)); }

}  // namespace

const char* to_string(TrajectoryStatus status) noexcept {
  switch (status) {
    case TrajectoryStatus::Complete: return "complete";
    case TrajectoryStatus::StepCollapse: return "StepCollapse";
    case TrajectoryStatus::LostRoot: return "LostRoot";
  }
  return "unknown";
}

RootTrajectory continue_root(const DelaySystem& sys, double tau0, cplx s0, double tau1,
                             const ContinuationOptions& options) {
  RootTrajectory traj;
  traj.birth_tau = tau0;

  const Corrected start = newton(sys, s0, tau0, options.corrector_tol);
  if (!start.converged) {
    traj.samples.push_back({tau0, s0});
    traj.status = TrajectoryStatus::LostRoot;
    return traj;
  }
  traj.samples.push_back({tau0, start.s});
  if (tau1 == tau0) return traj;

  const double span = std::abs(tau1 - tau0);
  const double dir = tau1 > tau0 ? 1.0 : -1.0;
  const double h_nom = span / options.min_samples;
  double h = h_nom / 16.0;
  double tau = tau0;
  cplx s = start.s;

  while (dir * (tau1 - tau) > 0.0) {
    const double remaining = std::abs(tau1 - tau);
    const bool last = remaining <= h;
    const double t_next = last ? tau1 : tau + dir * h;

    bool accepted = false;
    cplx s_next;
    const Partials p = [&] {
      try {
        return eval_d_partials(sys, s, tau);
      } catch (const Error&) {
        return Partials{0.0, 0.0};
      }
    }();
    if (p.d_ds != cplx(0.0)) {
      const cplx predicted = s + (-p.d_dtau / p.d_ds) * (t_next - tau);
      const Corrected c = newton(sys, predicted, t_next, options.corrector_tol);
      const double jump = std::abs(c.s - predicted);
      if (c.converged && jump <= 0.3 * std::abs(predicted - s) + 1e-9 * (1.0 + std::abs(s))) {
        accepted = true;
        s_next = c.s;
        if (c.iterations <= 3) h = std::min(2.0 * h, h_nom);
      }
    }

    // A conjugate pair meeting on the real axis: the branch cannot pass to the
    // other half-plane, so it continues along the rightmost real root.
    const bool reaching_axis =
        !is_real(s) && accepted && (is_real(s_next) || s_next.imag() * s.imag() < 0.0);
    const bool stuck_near_axis =
        !accepted && h / 2.0 < options.min_step && !is_real(s) &&
        std::abs(s.imag()) < 0.05 * std::max(1.0, std::abs(s));
    if (reaching_axis || stuck_near_axis) {
      const double t_jump = tau + dir * std::min(remaining, h_nom / 16.0);
      if (const auto r = rightmost_real_root(sys, s, t_jump, options.corrector_tol)) {
        traj.collisions.push_back(t_jump);
        tau = t_jump;
        s = *r;
        traj.samples.push_back({tau, s});
        h = h_nom / 16.0;
        continue;
      }
    }

    if (accepted) {
      tau = t_next;
      s = s_next;
      traj.samples.push_back({tau, s});
      continue;
    }
    h /= 2.0;
    if (h < options.min_step) {
      traj.status = TrajectoryStatus::StepCollapse;
      break;
    }
  }

  if (dir < 0.0) std::reverse(traj.samples.begin(), traj.samples.end());
  return traj;
}

double pole_error_estimate(const DelaySystem& sys, cplx s) {
  const Evaluation ev = eval_d_full(sys, s, sys.tau());
  double err = ev.partials.d_ds == cplx(0.0) ? std::numeric_limits<double>::infinity()
                                             : std::abs(ev.value / ev.partials.d_ds);
  err = std::max(err, std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s)) * 1e-2);
  return std::pow(10.0, std::ceil(std::log10(err)));
}

RootLocus root_locus(const DelaySystem& sys, const StabilityReport& report, double axis_tol) {
  if (report.chains.kind == ChainKind::Neutral &&
      !std::all_of(report.chains.axes.begin(), report.chains.axes.end(),
                   [&](double a) { return a < -axis_tol; }))
    throw Error(ErrorCode::NeutralAxisInRHP,
                "root locus only runs when every neutral chain is asymptotic to a vertical axis "
                "in the open left half-plane");

  RootLocus out;
  struct Branch {
    double tau;
    double omega;
    int event;
  };
  std::vector<Branch> branches;
  for (const ImaginaryRoot& row : report.imaginary) {
    if (row.omega <= 0.0 || row.direction == -1 || row.tau > sys.tau() * (1.0 + 1e-12)) continue;
    int event = -1;
    for (std::size_t e = 0; e < report.crossings.events.size(); ++e)
      if (std::abs(report.crossings.events[e].omega - row.omega) < 1e-12 * row.omega)
        event = static_cast<int>(e);
    branches.push_back({row.tau, row.omega, event});
  }

  std::vector<RootTrajectory> forward(branches.size());
  std::vector<RootTrajectory> backward(branches.size());
  parallel_for(branches.size(), [&](std::size_t i) {
    const Branch& b = branches[i];
    const double period = 2.0 * std::numbers::pi / b.omega;
    const cplx s0(0.0, b.omega);
    forward[i] = continue_root(sys, b.tau, s0, sys.tau());
    backward[i] = continue_root(sys, b.tau, s0, std::max(0.0, b.tau - period));
  });

  std::vector<cplx> endpoints;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    RootTrajectory& fw = forward[i];
    if (fw.status != TrajectoryStatus::Complete) {
      std::ostringstream msg;
      msg << "branch born at tau = " << branches[i].tau << " stopped at tau = "
          << fw.samples.back().tau;
      throw Error(fw.status == TrajectoryStatus::StepCollapse ? ErrorCode::StepCollapse
                                                              : ErrorCode::LostRoot,
                  msg.str());
    }
    const RootTrajectory& bw = backward[i];
    if (bw.status != TrajectoryStatus::Complete) {
      std::ostringstream msg;
      msg << "display continuation below tau = " << branches[i].tau << " stopped at tau = "
          << bw.samples.front().tau << " (" << to_string(bw.status) << ")";
      out.warnings.push_back(msg.str());
    }
    for (double c : fw.collisions) {
      std::ostringstream msg;
      msg << "conjugate pair born at tau = " << branches[i].tau
          << " meets the real axis near tau = " << c
          << "; the branch follows the rightmost real root (collision not resolved)";
      out.warnings.push_back(msg.str());
    }

    RootTrajectory traj;
    traj.birth_event = branches[i].event;
    traj.birth_tau = branches[i].tau;
    traj.collisions = fw.collisions;
    traj.samples.assign(bw.samples.begin(), bw.samples.end());
    if (!traj.samples.empty()) traj.samples.pop_back();  // shared crossing sample
    traj.samples.insert(traj.samples.end(), fw.samples.begin(), fw.samples.end());

    RootTrajectory mirror = traj;
    mirror.conjugate = true;
    for (LocusSample& smp : mirror.samples) smp.s = std::conj(smp.s);

    endpoints.push_back(fw.samples.back().s);
    endpoints.push_back(std::conj(fw.samples.back().s));
    out.trajectories.push_back(std::move(traj));
    out.trajectories.push_back(std::move(mirror));
  }

  for (const cplx& e : endpoints) {
    if (e.real() <= -axis_tol) continue;
    const double err = pole_error_estimate(sys, e);
    auto& u = out.unstable;
    auto it = std::find_if(u.poles.begin(), u.poles.end(),
                           [&](const cplx& p) { return std::abs(p - e) < kClusterRadius; });
    if (it == u.poles.end()) {
      u.poles.push_back(e);
      u.multiplicities.push_back(1);
      u.errors.push_back(err);
    } else {
      const auto idx = static_cast<std::size_t>(it - u.poles.begin());
      ++u.multiplicities[idx];
      u.errors[idx] = std::max(u.errors[idx], err);
    }
  }
  return out;
}

RootLocus root_locus(const DelaySystem& sys, const AnalysisOptions& options) {
  return root_locus(sys, analyze(sys, options), options.axis_tol);
}

}  // namespace delaystab
