#include "delaystab/cli.hpp"

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "delaystab/error.hpp"
#include "delaystab/io.hpp"
#include "delaystab/pade.hpp"
#include "delaystab/plot.hpp"

namespace delaystab::cli {

namespace {

enum class Command { Analyze, Windows, Locus, Pade };

struct Options {
  std::string file;
  std::string format = "text";
  std::string plot;
  std::optional<double> omega_max;
  double tolerance = kAxisTol;
  int delta = 0;
  std::string mode = "order";
  double mod_arg = 1.0;
};

// Warnings collected from every stage go last, once.
io::json merged(const io::json& a, const io::json& b) {
  io::json out = a;
  io::json warnings = out.value("Warnings", io::json::array());
  out.erase("Warnings");
  for (const auto& item : b.items()) {
    if (item.key() == "Warnings") {
      for (const auto& w : item.value())
        if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
    } else {
      out[item.key()] = item.value();
    }
  }
  out["Warnings"] = warnings;
  return out;
}

std::vector<std::string> unseen(const std::vector<std::string>& seen,
                                const std::vector<std::string>& warnings) {
  std::vector<std::string> out;
  for (const std::string& w : warnings)
    if (std::find(seen.begin(), seen.end(), w) == seen.end()) out.push_back(w);
  return out;
}

void execute(Command cmd, const Options& opt, std::ostream& out) {
  const DelaySystem sys = io::load_system(opt.file);
  const bool as_json = opt.format == "json";

  if (cmd == Command::Pade) {
    PadeRequest req{sys, opt.delta, opt.mode == "norm" ? PadeMode::Norm : PadeMode::Order,
                    opt.mod_arg};
    const PadeResult res = compute_pade(req);
    if (as_json)
      out << io::pade_json(res).dump(2) << "\n";
    else
      out << io::pade_text(res);
    return;
  }

  AnalysisOptions aopt;
  aopt.omega_max = opt.omega_max;
  aopt.axis_tol = opt.tolerance;
  const StabilityReport report = analyze(sys, aopt);

  io::json doc = io::analysis_json(report);
  std::string text = io::analysis_text(report);
  if (cmd == Command::Windows || cmd == Command::Locus) {
    doc = merged(doc, io::windows_json(report.windows));
    WindowsReport w = report.windows;
    w.warnings.clear();
    text += io::windows_text(w);
  }
  if (cmd == Command::Windows && !opt.plot.empty())
    plot::write_plot(opt.plot, plot::windows_svg(report.windows), plot::windows_csv(report.windows));

  if (cmd == Command::Locus) {
    RootLocus locus = root_locus(sys, report, opt.tolerance);
    doc = merged(doc, io::locus_json(locus));
    if (!opt.plot.empty())
      plot::write_plot(opt.plot, plot::locus_svg(locus, report.imaginary), plot::locus_csv(locus));
    locus.warnings = unseen(report.warnings, locus.warnings);
    text += io::locus_text(locus);
  }

  if (as_json)
    out << doc.dump(2) << "\n";
  else
    out << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability analysis of linear systems with commensurate delays", "delaystab"};
  app.require_subcommand(1);
  Options opt;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "system file (JSON)")->required();
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  const auto analysis = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--omega-max", opt.omega_max, "upper end of the frequency scan")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", opt.tolerance, "imaginary-axis tolerance")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "chain type, zero-delay roots, crossings");
  analysis(analyze_cmd);
  CLI::App* windows_cmd = app.add_subcommand("windows", "stability windows over the delay");
  analysis(windows_cmd);
  windows_cmd->add_option("--plot", opt.plot, "SVG output path (CSV written alongside)");
  CLI::App* locus_cmd = app.add_subcommand("locus", "root locus of the destabilizing roots");
  analysis(locus_cmd);
  locus_cmd->add_option("--plot", opt.plot, "SVG output path (CSV written alongside)");
  CLI::App* pade_cmd = app.add_subcommand("pade", "Pade approximation with H-infinity error");
  common(pade_cmd);
  pade_cmd->add_option("--delta", opt.delta, "exponent of the (s + 1) lag")->required();
  pade_cmd->add_option("--mode", opt.mode, "order or norm")
      ->check(CLI::IsMember({"order", "norm"}, CLI::ignore_case));
  pade_cmd->add_option("--arg", opt.mod_arg, "order (order mode) or error cap (norm mode)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "BadRequest: " << e.what() << "\n";
    return 1;
  }
  for (char& c : opt.mode) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  Command cmd = Command::Analyze;
  if (windows_cmd->parsed()) cmd = Command::Windows;
  if (locus_cmd->parsed()) cmd = Command::Locus;
  if (pade_cmd->parsed()) cmd = Command::Pade;

  try {
    execute(cmd, opt, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_input_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "InternalError: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace delaystab::cli
