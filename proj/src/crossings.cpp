#include "delaystab/crossings.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "delaystab/error.hpp"
#include "delaystab/parallel.hpp"
#include "delaystab/polyroots.hpp"

namespace delaystab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCandidateBand = 1e-3;
constexpr double kPolishedGap = 1e-6;
constexpr double kMinimumAccept = 1e-7;
constexpr double kMergeTol = 1e-7;

struct Sample {
  double omega = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  int inside = 0;
  bool valid = false;
};

std::vector<cplx> d_omega_roots(const DelaySystem& sys, double omega) {
  const std::vector<cplx> c = delay_polynomial(sys, omega);
  double cmax = 0.0;
  for (const cplx& v : c) cmax = std::max(cmax, std::abs(v));
  const double floor = 1e-14 * residual_scale(sys, cplx(0.0, omega), 0.0);
  if (cmax <= floor)
    throw Error(ErrorCode::DegenerateAtOmega, "D_omega vanishes at omega = " + std::to_string(omega));
  return poly_roots(c).roots;
}

Sample sample_at(const DelaySystem& sys, double omega) {
  Sample out;
  out.omega = omega;
  try {
    for (const cplx& z : d_omega_roots(sys, omega)) {
      const double r = std::abs(z);
      out.gap = std::min(out.gap, std::abs(r - 1.0));
      if (r < 1.0) ++out.inside;
    }
    out.valid = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateAtOmega) throw;
  }
  return out;
}

std::vector<double> scan_grid(double omega_max, int points) {
  const int half = std::max(2, points / 2);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(2 * half));
  const double lo = std::log(omega_max * 1e-6);
  const double hi = std::log(omega_max);
  for (int i = 0; i < half; ++i)
    grid.push_back(std::exp(lo + (hi - lo) * i / (half - 1)));
  for (int i = 1; i <= half; ++i) grid.push_back(omega_max * i / half);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-14 * b; }),
             grid.end());
  grid.back() = omega_max;
  return grid;
}

// Bisection on the number of roots inside the unit circle.
double bisect_count(const DelaySystem& sys, Sample lo, Sample hi) {
  for (int it = 0; it < 200 && hi.omega - lo.omega > 1e-15 * hi.omega; ++it) {
    const Sample mid = sample_at(sys, 0.5 * (lo.omega + hi.omega));
    if (!mid.valid) break;
    if (mid.inside == lo.inside)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo.omega + hi.omega);
}

double golden_minimize(const std::function<double(double)>& f, double a, double b, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

// Newton's method on d(j omega; tau) = 0 in the real unknowns (omega, tau).
bool polish_crossing(const DelaySystem& sys, double& omega, double& tau) {
  double best_omega = omega;
  double best_tau = tau;
  double best_res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 40; ++it) {
    const Evaluation ev = eval_d_full(sys, cplx(0.0, omega), tau);
    const double res = std::abs(ev.value) / residual_scale(sys, cplx(0.0, omega), tau);
    if (res < best_res) {
      best_res = res;
      best_omega = omega;
      best_tau = tau;
    }
    if (res < 1e-16) break;
    const cplx a = cplx(0.0, 1.0) * ev.partials.d_ds;  // dF/domega
    const cplx b = ev.partials.d_dtau;                  // dF/dtau
    const double det = a.real() * b.imag() - b.real() * a.imag();
    if (det == 0.0) break;
    const double d_omega = -(ev.value.real() * b.imag() - b.real() * ev.value.imag()) / det;
    const double d_tau = -(a.real() * ev.value.imag() - ev.value.real() * a.imag()) / det;
    omega += d_omega;
    tau += d_tau;
    if (!(omega > 0.0) || !std::isfinite(tau)) break;
    if (std::abs(d_omega) <= 1e-16 * omega && std::abs(d_tau) <= 1e-16 * std::max(1.0, std::abs(tau)))
      break;
  }
  omega = best_omega;
  tau = best_tau;
  return best_res < 1e-9;
}

void add_events_at(const DelaySystem& sys, double omega_c, std::vector<CrossingEvent>& out) {
  std::vector<cplx> roots;
  try {
    roots = d_omega_roots(sys, omega_c);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateAtOmega) return;
    throw;
  }
  for (const cplx& z : roots) {
    if (std::abs(std::abs(z) - 1.0) > kPolishedGap) continue;
    double theta = std::fmod(-std::arg(z) + kTwoPi, kTwoPi);
    double omega = omega_c;
    double tau = theta / omega;
    if (tau <= 0.0) tau = kTwoPi / omega;
    if (!polish_crossing(sys, omega, tau)) continue;

    CrossingEvent ev;
    ev.omega = omega;
    ev.period = kTwoPi / omega;
    tau = std::fmod(tau, ev.period);
    if (tau < 0.0) tau += ev.period;
    if (tau <= 1e-12 * ev.period) tau = ev.period;
    ev.tau_first = tau;
    ev.z_star = std::polar(1.0, -omega * tau);
    ev.direction = crossing_direction(sys, omega, tau);
    out.push_back(ev);
  }
}

}  // namespace

std::vector<cplx> delay_polynomial(const DelaySystem& sys, double omega) {
  const cplx sigma = std::polar(std::pow(omega, sys.alpha()), sys.alpha() * std::numbers::pi / 2.0);
  const int top = sys.max_multiple();
  std::vector<cplx> c(static_cast<std::size_t>(top) + 1, 0.0);
  const auto& rows = sys.coeffs();
  c[static_cast<std::size_t>(top)] += poly::eval(rows[0], sigma);
  for (int k = 0; k < sys.delayed_rows(); ++k) {
    const int nk = sys.delay_multiples()[static_cast<std::size_t>(k)];
    c[static_cast<std::size_t>(top - nk)] += poly::eval(rows[static_cast<std::size_t>(k) + 1], sigma);
  }
  return c;
}

UnitCircleGap unit_circle_gap(const DelaySystem& sys, double omega) {
  if (!(omega > 0.0)) throw Error(ErrorCode::BadRequest, "omega must be positive");
  UnitCircleGap out;
  out.gap = std::numeric_limits<double>::infinity();
  for (const cplx& z : d_omega_roots(sys, omega)) {
    const double g = std::abs(std::abs(z) - 1.0);
    out.gap = std::min(out.gap, g);
    if (g < kCandidateBand) out.candidates.push_back(z);
  }
  return out;
}

double default_omega_max(const DelaySystem& sys) {
  const double lead = std::abs(sys.coeffs()[0][0]);
  double worst = 0.0;
  for (const auto& row : sys.coeffs()) {
    double sum = 0.0;
    for (double v : row) sum += std::abs(v);
    worst = std::max(worst, sum / lead);
  }
  return 2.0 * std::pow(1.0 + worst, 1.0 / sys.alpha());
}

int crossing_direction(const DelaySystem& sys, double omega, double tau_star) {
  const cplx s(0.0, omega);
  const Partials p = eval_d_partials(sys, s, tau_star);
  if (std::abs(p.d_ds) < 1e-12 * residual_scale(sys, s, tau_star)) {
    std::ostringstream msg;
    msg << "dd/ds vanishes at omega = " << omega << ", tau = " << tau_star;
    throw Error(ErrorCode::StationaryPoint, msg.str());
  }
  const double re = (-p.d_dtau / p.d_ds).real();
  if (std::abs(re) < 1e-10) return 0;
  return re > 0.0 ? 1 : -1;
}

CrossingScan find_crossings(const DelaySystem& sys, double omega_max, int grid_points) {
  if (!(omega_max > 0.0)) throw Error(ErrorCode::BadRequest, "omega_max must be positive");
  CrossingScan scan;
  scan.omega_max = omega_max;
  if (sys.is_delay_free()) return scan;

  if (std::abs(eval_d(sys, 0.0, 0.0)) <= 1e-12 * sys.coeff_scale())
    scan.warnings.push_back("d(0; tau) = 0 for every tau: persistent root at the origin");

  const std::vector<double> grid = scan_grid(omega_max, grid_points);
  std::vector<Sample> samples(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { samples[i] = sample_at(sys, grid[i]); });

  std::vector<double> candidates;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (samples[i].valid && samples[i + 1].valid && samples[i].inside != samples[i + 1].inside)
      candidates.push_back(bisect_count(sys, samples[i], samples[i + 1]));
  }
  // tangential touches do not change the inside count
  const auto gap_at = [&](double w) {
    const Sample s = sample_at(sys, w);
    return s.valid ? s.gap : std::numeric_limits<double>::infinity();
  };
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const Sample& s = samples[i];
    if (!s.valid || !samples[i - 1].valid || !samples[i + 1].valid) continue;
    if (s.gap > samples[i - 1].gap || s.gap > samples[i + 1].gap) continue;
    if (s.inside != samples[i - 1].inside || s.inside != samples[i + 1].inside) continue;
    if (s.gap > 1e-2) continue;
    const double w = golden_minimize(gap_at, samples[i - 1].omega, samples[i + 1].omega,
                                     1e-12 * std::max(1.0, samples[i + 1].omega));
    if (gap_at(w) < kMinimumAccept) candidates.push_back(w);
  }

  std::vector<CrossingEvent> raw;
  for (double w : candidates) add_events_at(sys, w, raw);

  std::sort(raw.begin(), raw.end(), [](const CrossingEvent& a, const CrossingEvent& b) {
    return a.omega != b.omega ? a.omega < b.omega : a.tau_first < b.tau_first;
  });
  for (const CrossingEvent& ev : raw) {
    const bool duplicate = std::any_of(scan.events.begin(), scan.events.end(), [&](const CrossingEvent& e) {
      return std::abs(e.omega - ev.omega) < kMergeTol && std::abs(e.tau_first - ev.tau_first) < kMergeTol;
    });
    if (!duplicate) scan.events.push_back(ev);
  }
  std::sort(scan.events.begin(), scan.events.end(), [](const CrossingEvent& a, const CrossingEvent& b) {
    return a.tau_first != b.tau_first ? a.tau_first < b.tau_first : a.omega < b.omega;
  });

  for (const CrossingEvent& ev : scan.events) {
    if (ev.direction == 0) {
      std::ostringstream msg;
      msg << "tangential crossing at omega = " << ev.omega << "; it does not change the count";
      scan.warnings.push_back(msg.str());
    }
  }

  const std::size_t last = samples.size() - 1;
  if (system_type(sys).kind == ChainKind::Neutral && samples[last].valid && samples[last - 1].valid &&
      samples[last].gap < samples[last - 1].gap) {
    scan.warnings.push_back("OmegaMaxTooSmall: the unit-circle gap is still decreasing at omega_max = " +
                            std::to_string(omega_max));
  }
  return scan;
}

std::vector<ImaginaryRoot> imaginary_roots(const DelaySystem& sys,
                                           const std::vector<CrossingEvent>& events) {
  const double limit = sys.tau() * (1.0 + 1e-12) + 1e-12;
  std::vector<ImaginaryRoot> rows;
  for (const CrossingEvent& ev : events) {
    for (int m = 0;; ++m) {
      const double tau_m = ev.tau_first + m * ev.period;
      if (tau_m > limit) break;
      const int dir = m == 0 ? ev.direction : crossing_direction(sys, ev.omega, tau_m);
      rows.push_back({tau_m, ev.omega, dir});
      rows.push_back({tau_m, -ev.omega, dir});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ImaginaryRoot& a, const ImaginaryRoot& b) {
    return a.tau != b.tau ? a.tau < b.tau : a.omega > b.omega;
  });
  return rows;
}

WindowsReport stability_windows(const DelaySystem& sys, const ChainClassification& chains,
                                const std::vector<ImaginaryRoot>& imaginary, int zero_delay_count,
                                double axis_tol) {
  WindowsReport out;
  const double tau_nom = sys.tau();
  const bool axes_ok = chains.kind == ChainKind::Retarded ||
                       std::all_of(chains.axes.begin(), chains.axes.end(),
                                   [&](double a) { return a < -axis_tol; });
  if (!axes_ok)
    out.warnings.push_back("a neutral chain is not strictly in the left half-plane; every window with tau > 0 is unstable");

  int count = zero_delay_count;
  out.count_breakpoints.push_back(0.0);
  out.counts.push_back(count);
  for (const ImaginaryRoot& row : imaginary) {
    if (row.omega < 0.0) continue;  // conjugate rows are counted with their pair
    if (row.tau <= 0.0) continue;
    const int delta = row.direction * (row.omega > 0.0 ? 2 : 1);
    if (row.direction == 0) {
      std::ostringstream msg;
      msg << "tangential crossing at tau = " << row.tau << " ignored in the count";
      out.warnings.push_back(msg.str());
    }
    count += delta;
    if (count < 0) {
      std::ostringstream msg;
      msg << "unstable-root count drops below zero at tau = " << row.tau << " (missed crossing?)";
      throw Error(ErrorCode::NegativeCount, msg.str());
    }
    const double tol = 1e-9 * std::max(1.0, row.tau);
    if (std::abs(out.count_breakpoints.back() - row.tau) <= tol && out.count_breakpoints.size() > 1) {
      out.counts.back() = count;
    } else {
      out.count_breakpoints.push_back(row.tau);
      out.counts.push_back(count);
    }
  }
  const double end_tol = 1e-9 * std::max(1.0, tau_nom);
  if (tau_nom - out.count_breakpoints.back() > end_tol) {
    out.count_breakpoints.push_back(tau_nom);
    out.counts.push_back(count);
  } else {
    out.count_breakpoints.back() = tau_nom;
  }

  const auto flag = [&](int c) { return axes_ok && c == 0 ? 1 : 0; };
  out.window_breakpoints.push_back(0.0);
  out.window_flags.push_back(flag(out.counts.front()));
  for (std::size_t i = 1; i + 1 < out.count_breakpoints.size(); ++i) {
    const int f = flag(out.counts[i]);
    if (f != out.window_flags.back()) {
      out.window_breakpoints.push_back(out.count_breakpoints[i]);
      out.window_flags.push_back(f);
    }
  }
  out.window_breakpoints.push_back(tau_nom);
  out.window_flags.push_back(0);
  return out;
}

WindowsReport stability_windows(const DelaySystem& sys, const AnalysisOptions& options) {
  return analyze(sys, options).windows;
}

StabilityReport analyze(const DelaySystem& sys, const AnalysisOptions& options) {
  StabilityReport rep;
  rep.chains = classify(sys);
  rep.zero_delay = zero_delay_roots(sys);
  const double omega_max = options.omega_max.value_or(default_omega_max(sys));
  rep.crossings = find_crossings(sys, omega_max, options.grid_points);
  rep.imaginary = imaginary_roots(sys, rep.crossings.events);

  const int zero_count = static_cast<int>(
      std::count_if(rep.zero_delay.roots.begin(), rep.zero_delay.roots.end(),
                    [&](const cplx& s) { return s.real() >= -options.axis_tol; }));
  rep.windows = stability_windows(sys, rep.chains, rep.imaginary, zero_count, options.axis_tol);
  rep.unstable_count = rep.windows.counts.back();

  rep.warnings = rep.zero_delay.warnings;
  rep.warnings.insert(rep.warnings.end(), rep.crossings.warnings.begin(), rep.crossings.warnings.end());
  rep.warnings.insert(rep.warnings.end(), rep.windows.warnings.begin(), rep.windows.warnings.end());
  if (rep.chains.delay_free) rep.warnings.push_back("delay-free system: no delayed terms");

  double max_axis = -std::numeric_limits<double>::infinity();
  for (double a : rep.chains.axes) max_axis = std::max(max_axis, a);
  rep.axes_stable = rep.chains.kind == ChainKind::Retarded || max_axis < -options.axis_tol;

  if (max_axis > options.axis_tol) {
    rep.verdict = "There are infinitely many unstable poles in the right half-plane (neutral chain)";
  } else if (!rep.axes_stable) {
    rep.verdict = "Not H-infinity stable (neutral chain asymptotic to the imaginary axis)";
  } else if (rep.unstable_count > 0) {
    rep.verdict = "There is (are) " + std::to_string(rep.unstable_count) +
                  " unstable pole(s) in the right half-plane";
  } else {
    rep.verdict = "The system is asymptotically stable";
    rep.stable = true;
  }
  return rep;
}

}  // namespace delaystab
