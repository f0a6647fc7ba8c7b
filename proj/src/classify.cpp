#include "delaystab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "delaystab/error.hpp"
#include "delaystab/polyroots.hpp"

namespace delaystab {

const char* to_string(ChainKind kind) noexcept {
  return kind == ChainKind::Neutral ? "Neutral" : "Retarded";
}

ChainClassification system_type(const DelaySystem& sys) {
  ChainClassification out;
  out.delay_free = sys.is_delay_free();
  const int n = sys.degree();
  for (int k = 1; k <= sys.delayed_rows(); ++k)
    if (sys.row_degree(k) == n) out.kind = ChainKind::Neutral;
  out.has_retarded_chains =
      out.kind == ChainKind::Neutral && sys.row_degree(sys.delayed_rows()) < n;
  return out;
}

std::vector<double> formal_cd(const DelaySystem& sys) {
  std::vector<double> cd(static_cast<std::size_t>(sys.max_multiple()) + 1, 0.0);
  cd[0] = 1.0;
  const double lead0 = sys.coeffs()[0][0];
  for (int k = 1; k <= sys.delayed_rows(); ++k) {
    if (sys.row_degree(k) != sys.degree()) continue;
    const int nk = sys.delay_multiples()[static_cast<std::size_t>(k - 1)];
    cd[static_cast<std::size_t>(nk)] = sys.coeffs()[static_cast<std::size_t>(k)][0] / lead0;
  }
  return cd;
}

std::vector<double> axes_from_cd(const std::vector<double>& cd_coeffs, double tau) {
  std::vector<double> descending(cd_coeffs.rbegin(), cd_coeffs.rend());
  const PolyRoots zr = poly_roots(descending);
  std::vector<double> axes;
  for (const cplx& z : zr.roots) {
    if (z == cplx(0.0)) continue;
    axes.push_back(-std::log(std::abs(z)) / tau);
  }
  std::sort(axes.begin(), axes.end());
  std::vector<double> merged;
  for (double a : axes)
    if (merged.empty() || a - merged.back() > 1e-9) merged.push_back(a);
  return merged;
}

std::vector<double> neutral_axes(const DelaySystem& sys) {
  if (system_type(sys).kind != ChainKind::Neutral)
    throw Error(ErrorCode::NotNeutral, "Roots chains only computed for neutral systems");
  return axes_from_cd(formal_cd(sys), sys.tau());
}

ChainClassification classify(const DelaySystem& sys) {
  ChainClassification out = system_type(sys);
  out.cd_coeffs = formal_cd(sys);
  if (out.kind == ChainKind::Neutral) out.axes = axes_from_cd(out.cd_coeffs, sys.tau());
  return out;
}

ZeroDelayRoots zero_delay_roots(const DelaySystem& sys) {
  const auto& rows = sys.coeffs();
  std::vector<double> column_sum(rows[0].size(), 0.0);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) column_sum[j] += row[j];
  if (poly::degree(column_sum) < 0)
    throw Error(ErrorCode::DegenerateSum, "d(s; 0) vanishes identically");

  const PolyRoots sr = poly_roots(column_sum);
  ZeroDelayRoots out;
  const double alpha = sys.alpha();
  const double edge = alpha * std::numbers::pi;
  for (const cplx& sigma : sr.roots) {
    if (alpha == 1.0) {
      out.roots.push_back(sigma);
      continue;
    }
    const double arg = std::arg(sigma);
    const double margin = edge - std::abs(arg);
    if (std::abs(margin) <= 1e-9) {
      std::ostringstream msg;
      msg << "root sigma = " << sigma << " lies on the principal-sheet sector edge";
      out.warnings.push_back(msg.str());
      continue;
    }
    if (margin > 0.0) out.roots.push_back(std::polar(std::pow(std::abs(sigma), 1.0 / alpha), arg / alpha));
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() > b.imag();
  });
  return out;
}

int zero_delay_unstable_count(const DelaySystem& sys, double axis_tol) {
  const ZeroDelayRoots zr = zero_delay_roots(sys);
  return static_cast<int>(std::count_if(zr.roots.begin(), zr.roots.end(),
                                        [&](const cplx& s) { return s.real() >= -axis_tol; }));
}

}  // namespace delaystab
