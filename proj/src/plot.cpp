#include "delaystab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "delaystab/error.hpp"

namespace delaystab::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 50.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

void pad(double& lo, double& hi) {
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
    return;
  }
  const double d = 0.05 * (hi - lo);
  lo -= d;
  hi += d;
}

std::ostringstream open_svg() {
  std::ostringstream out;
  out.precision(6);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out;
}

void axes_box(std::ostringstream& out, const Frame& f, const std::string& xlabel,
              const std::string& ylabel) {
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    out << "<text x=\"" << f.px(x) << "\" y=\"" << kHeight - kMargin + 16
        << "\" font-size=\"11\" text-anchor=\"middle\">" << x << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << f.py(y) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << y << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  out << "<text x=\"14\" y=\"" << kHeight / 2 << "\" font-size=\"13\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 14 " << kHeight / 2 << ")\">" << ylabel << "</text>\n";
}

}  // namespace

std::string windows_svg(const WindowsReport& w) {
  const double t_end = w.count_breakpoints.empty() ? 1.0 : w.count_breakpoints.back();
  int max_count = 1;
  for (int c : w.counts) max_count = std::max(max_count, c);
  Frame f{0.0, t_end > 0.0 ? t_end : 1.0, 0.0, max_count + 0.5};
  std::ostringstream out = open_svg();

  for (std::size_t i = 0; i + 1 < w.window_breakpoints.size(); ++i) {
    if (!w.window_flags[i]) continue;
    const double a = f.px(w.window_breakpoints[i]);
    const double b = f.px(w.window_breakpoints[i + 1]);
    out << "<rect x=\"" << a << "\" y=\"" << kMargin << "\" width=\"" << b - a << "\" height=\""
        << kHeight - 2 * kMargin << "\" fill=\"#c7e9c0\"/>\n";
  }
  axes_box(out, f, "delay", "unstable roots");

  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < w.counts.size(); ++i) {
    const double a = w.count_breakpoints[i];
    const double b = i + 1 < w.count_breakpoints.size() ? w.count_breakpoints[i + 1] : a;
    out << f.px(a) << "," << f.py(w.counts[i]) << " " << f.px(b) << "," << f.py(w.counts[i]) << " ";
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

std::string windows_csv(const WindowsReport& w) {
  std::ostringstream out;
  out.precision(17);
  out << "tau,count,stable\r\n";
  for (std::size_t i = 0; i < w.counts.size(); ++i) {
    const double t = w.count_breakpoints[i];
    int flag = 0;
    for (std::size_t j = 0; j < w.window_breakpoints.size(); ++j)
      if (w.window_breakpoints[j] <= t) flag = w.window_flags[j];
    out << t << "," << w.counts[i] << "," << flag << "\r\n";
  }
  return out.str();
}

std::string locus_svg(const RootLocus& locus, const std::vector<ImaginaryRoot>& crossings) {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  for (const RootTrajectory& t : locus.trajectories)
    for (const LocusSample& s : t.samples) {
      x0 = std::min(x0, s.s.real());
      x1 = std::max(x1, s.s.real());
      y0 = std::min(y0, s.s.imag());
      y1 = std::max(y1, s.s.imag());
    }
  pad(x0, x1);
  pad(y0, y1);
  Frame f{x0, x1, y0, y1};
  std::ostringstream out = open_svg();
  axes_box(out, f, "Re s", "Im s");

  out << "<line x1=\"" << f.px(0) << "\" y1=\"" << kMargin << "\" x2=\"" << f.px(0) << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

  std::size_t branch = 0;
  for (const RootTrajectory& t : locus.trajectories) {
    const char* colour = kPalette[(branch / 2) % std::size(kPalette)];
    ++branch;
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (const LocusSample& s : t.samples) out << f.px(s.s.real()) << "," << f.py(s.s.imag()) << " ";
    out << "\"/>\n";
  }
  for (const ImaginaryRoot& c : crossings)
    out << "<circle cx=\"" << f.px(0) << "\" cy=\"" << f.py(c.omega)
        << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
  for (const cplx& p : locus.unstable.poles) {
    const double cx = f.px(p.real());
    const double cy = f.py(p.imag());
    out << "<path d=\"M" << cx - 4 << "," << cy - 4 << " L" << cx + 4 << "," << cy + 4 << " M"
        << cx - 4 << "," << cy + 4 << " L" << cx + 4 << "," << cy - 4
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string locus_csv(const RootLocus& locus) {
  std::ostringstream out;
  out.precision(17);
  out << "branch,conjugate,tau,re,im\r\n";
  for (std::size_t b = 0; b < locus.trajectories.size(); ++b) {
    const RootTrajectory& t = locus.trajectories[b];
    for (const LocusSample& s : t.samples)
      out << b << "," << (t.conjugate ? 1 : 0) << "," << s.tau << "," << s.s.real() << ","
          << s.s.imag() << "\r\n";
  }
  return out.str();
}

std::string sidecar_path(const std::string& svg_path) {
  return std::filesystem::path(svg_path).replace_extension(".csv").string();
}

void write_plot(const std::string& path, const std::string& svg, const std::string& csv) {
  const auto write = [](const std::string& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw Error(ErrorCode::BadRequest, "cannot write " + p);
  };
  write(path, svg);
  write(sidecar_path(path), csv);
}

}  // namespace delaystab::plot
