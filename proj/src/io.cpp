#include "delaystab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "delaystab/error.hpp"

namespace delaystab::io {

namespace {

constexpr const char* kRetardedChains = "Roots chains only computed for neutral systems";

double parse_plain(const std::string& text, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw Error(ErrorCode::ParseError, "not a number: \"" + whole + "\"");
  return v;
}

std::vector<double> parse_vector(const json& v, const char* what) {
  if (!v.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const json& x : v) out.push_back(parse_number(x));
  return out;
}

CoeffMatrix parse_matrix(const json& v, const char* what) {
  if (!v.is_array() || v.empty())
    throw Error(ErrorCode::ParseError, std::string(what) + " must be a nonempty array of rows");
  CoeffMatrix out;
  for (const json& row : v) out.push_back(parse_vector(row, what));
  return out;
}

Eigen::MatrixXd to_eigen(const CoeffMatrix& m, const char* what) {
  const auto rows = static_cast<Eigen::Index>(m.size());
  const auto cols = static_cast<Eigen::Index>(m.front().size());
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(m[i].size()) != cols)
      throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is not rectangular");
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = m[i][j];
  }
  return out;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_list(const std::vector<cplx>& zs) {
  json out = json::array();
  for (const cplx& z : zs) out.push_back(complex_json(z));
  return out;
}

template <typename T>
json row_json(const std::vector<T>& v) {
  json out = json::array();
  for (const T& x : v) out.push_back(x);
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8f", x);
  return std::string(buf) == "-0.00000000" ? "0.00000000" : buf;
}

std::string fmt(cplx z) {
  const bool negative = z.imag() < 0.0 && fmt(std::abs(z.imag())) != fmt(0.0);
  return fmt(z.real()) + (negative ? "-" : "+") + fmt(std::abs(z.imag())) + "j";
}

std::string fmt_err(double e) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.0e", e);
  return buf;
}

template <typename Row>
void table(std::ostringstream& out, const std::vector<Row>& rows) {
  for (const Row& r : rows) {
    out << "  [";
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << fmt(r[j]);
    out << "]\n";
  }
}

void warnings_text(std::ostringstream& out, const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) out << "Warning: " << w << "\n";
}

}  // namespace

double parse_number(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) throw Error(ErrorCode::ParseError, "expected a number, got " + value.dump());
  const std::string text = value.get<std::string>();
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_plain(text, text);
  const double p = parse_plain(text.substr(0, slash), text);
  const double q = parse_plain(text.substr(slash + 1), text);
  if (q == 0.0) throw Error(ErrorCode::ParseError, "zero denominator in \"" + text + "\"");
  return p / q;
}

DelaySystem system_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "system file must hold a JSON object");
  const bool has_p = doc.contains("P");
  const bool has_ss = doc.contains("A0") || doc.contains("A1");
  if (has_p == has_ss)
    throw Error(ErrorCode::ParseError, "give exactly one of {P, n, tau, alpha} or {A0, A1, tau}");
  for (const auto& item : doc.items()) {
    const std::string& k = item.key();
    const bool known = has_p ? (k == "P" || k == "n" || k == "tau" || k == "alpha")
                             : (k == "A0" || k == "A1" || k == "tau");
    if (!known) throw Error(ErrorCode::ParseError, "unexpected key \"" + k + "\"");
  }
  if (!doc.contains("tau")) throw Error(ErrorCode::ParseError, "missing key \"tau\"");
  const double tau = parse_number(doc.at("tau"));

  if (has_p) {
    CoeffMatrix coeffs = parse_matrix(doc.at("P"), "P");
    std::vector<int> multiples;
    if (doc.contains("n")) {
      for (double v : parse_vector(doc.at("n"), "n")) {
        if (v != std::floor(v) || std::abs(v) > 1e9)
          throw Error(ErrorCode::BadMultiples, "delay multiples must be integers");
        multiples.push_back(static_cast<int>(v));
      }
    }
    const double alpha = doc.contains("alpha") ? parse_number(doc.at("alpha")) : 1.0;
    return validate_system(std::move(coeffs), std::move(multiples), tau, alpha);
  }
  if (!doc.contains("A0") || !doc.contains("A1"))
    throw Error(ErrorCode::ParseError, "state-space form needs both A0 and A1");
  StateSpacePair pair;
  pair.A0 = to_eigen(parse_matrix(doc.at("A0"), "A0"), "A0");
  pair.A1 = to_eigen(parse_matrix(doc.at("A1"), "A1"), "A1");
  pair.tau = tau;
  return from_state_space(pair);
}

DelaySystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return system_from_json(doc);
}

json analysis_json(const StabilityReport& report) {
  json out = json::object();
  out["Type"] = to_string(report.chains.kind);
  out["AsympStability"] = report.verdict;
  out["RootsNoDelay"] = complex_list(report.zero_delay.roots);
  if (report.chains.kind == ChainKind::Neutral)
    out["RootsChain"] = row_json(report.chains.axes);
  else
    out["RootsChain"] = kRetardedChains;
  json crossing = json::array();
  for (const CrossingEvent& e : report.crossings.events)
    crossing.push_back({e.tau_first, e.period, e.omega, e.direction});
  out["CrossingTable"] = crossing;
  json imaginary = json::array();
  for (const ImaginaryRoot& r : report.imaginary) imaginary.push_back({r.tau, r.omega, r.direction});
  out["ImaginaryRoots"] = imaginary;
  out["Warnings"] = row_json(report.warnings);
  return out;
}

json windows_json(const WindowsReport& windows) {
  json out = json::object();
  out["StabilityWindows"] = {row_json(windows.window_breakpoints), row_json(windows.window_flags)};
  out["NbUnstablePoles"] = {row_json(windows.count_breakpoints), row_json(windows.counts)};
  out["Warnings"] = row_json(windows.warnings);
  return out;
}

json locus_json(const RootLocus& locus) {
  json out = json::object();
  out["UnstablePoles"] = complex_list(locus.unstable.poles);
  out["Multiplicities"] = row_json(locus.unstable.multiplicities);
  out["PolesError"] = row_json(locus.unstable.errors);
  json branches = json::array();
  for (const RootTrajectory& t : locus.trajectories) {
    json samples = json::array();
    for (const LocusSample& s : t.samples) samples.push_back({s.tau, s.s.real(), s.s.imag()});
    json b = json::object();
    b["birth_tau"] = t.birth_tau;
    b["conjugate"] = t.conjugate;
    b["collisions"] = row_json(t.collisions);
    b["samples"] = std::move(samples);
    branches.push_back(std::move(b));
  }
  out["RootLocus"] = std::move(branches);
  out["Warnings"] = row_json(locus.warnings);
  return out;
}

json pade_json(const PadeResult& result) {
  json out = json::object();
  out["num_approx"] = row_json(result.num_approx);
  out["den_approx"] = row_json(result.den_approx);
  out["error_norm"] = result.error_norm;
  out["pade_order"] = result.pade_order;
  out["abs_error"] = result.abs_error;
  return out;
}

std::string analysis_text(const StabilityReport& report) {
  std::ostringstream out;
  out << "Type: " << to_string(report.chains.kind) << "\n";
  out << "AsympStability: " << report.verdict << "\n";
  out << "RootsNoDelay: [";
  for (std::size_t i = 0; i < report.zero_delay.roots.size(); ++i)
    out << (i ? "\n               " : "") << fmt(report.zero_delay.roots[i]);
  out << "]\n";
  out << "RootsChain: ";
  if (report.chains.kind == ChainKind::Neutral) {
    out << "[";
    for (std::size_t i = 0; i < report.chains.axes.size(); ++i)
      out << (i ? " " : "") << fmt(report.chains.axes[i]);
    out << "]\n";
  } else {
    out << kRetardedChains << "\n";
  }
  std::vector<std::vector<double>> rows;
  for (const CrossingEvent& e : report.crossings.events)
    rows.push_back({e.tau_first, e.period, e.omega, static_cast<double>(e.direction)});
  out << "CrossingTable:\n";
  table(out, rows);
  rows.clear();
  for (const ImaginaryRoot& r : report.imaginary)
    rows.push_back({r.tau, r.omega, static_cast<double>(r.direction)});
  out << "ImaginaryRoots:\n";
  table(out, rows);
  warnings_text(out, report.warnings);
  return out.str();
}

std::string windows_text(const WindowsReport& windows) {
  std::ostringstream out;
  const auto as_double = [](const std::vector<int>& v) { return std::vector<double>(v.begin(), v.end()); };
  out << "StabilityWindows:\n";
  table(out, std::vector<std::vector<double>>{windows.window_breakpoints, as_double(windows.window_flags)});
  out << "NbUnstablePoles:\n";
  table(out, std::vector<std::vector<double>>{windows.count_breakpoints, as_double(windows.counts)});
  warnings_text(out, windows.warnings);
  return out.str();
}

std::string locus_text(const RootLocus& locus) {
  std::ostringstream out;
  const UnstablePoleSet& u = locus.unstable;
  out << "UnstablePoles:\n";
  for (std::size_t i = 0; i < u.poles.size(); ++i) {
    out << "  " << fmt(u.poles[i]);
    if (u.multiplicities[i] > 1) out << "  (multiplicity " << u.multiplicities[i] << ")";
    out << "\n";
  }
  out << "PolesError: [";
  for (std::size_t i = 0; i < u.errors.size(); ++i) out << (i ? " " : "") << fmt_err(u.errors[i]);
  out << "]\n";
  out << "RootLocus: " << locus.trajectories.size() << " branches";
  std::size_t samples = 0;
  for (const RootTrajectory& t : locus.trajectories) samples += t.samples.size();
  out << ", " << samples << " samples\n";
  warnings_text(out, locus.warnings);
  return out.str();
}

std::string pade_text(const PadeResult& result) {
  std::ostringstream out;
  const auto poly_line = [&](const char* name, const RealPoly& p) {
    out << name << ": [";
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? ", " : "") << p[i];
    out << "]\n";
  };
  out.precision(12);
  poly_line("num_approx", result.num_approx);
  poly_line("den_approx", result.den_approx);
  out.precision(17);
  out << "error_norm: " << result.error_norm << "\n";
  out << "pade_order: " << result.pade_order << "\n";
  return out.str();
}

}  // namespace delaystab::io
