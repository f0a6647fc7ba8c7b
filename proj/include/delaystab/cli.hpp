#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace delaystab::cli {

/// Subcommands analyze, windows, locus and pade. Returns 0 on success, 1 on
/// input errors and 2 on numerical failures; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace delaystab::cli
