#pragma once

// System files and report rendering.
//
// A system file is one JSON object, either
//   {"P": [[...], ...], "n": [...], "tau": t, "alpha": a}      (alpha optional, default 1)
// or
//   {"A0": [[...], ...], "A1": [[...], ...], "tau": t}
// Numbers may also be strings "p/q".

#include <string>

#include <json.hpp>

#include "delaystab/crossings.hpp"
#include "delaystab/pade.hpp"
#include "delaystab/rootlocus.hpp"
#include "delaystab/system.hpp"

namespace delaystab::io {

using json = nlohmann::ordered_json;

/// A JSON number or a "p/q" / decimal string. Throws ParseError.
double parse_number(const json& value);

DelaySystem system_from_json(const json& doc);
/// Throws ParseError on unreadable files or malformed JSON.
DelaySystem load_system(const std::string& path);

json analysis_json(const StabilityReport& report);
json windows_json(const WindowsReport& windows);
json locus_json(const RootLocus& locus);
json pade_json(const PadeResult& result);

std::string analysis_text(const StabilityReport& report);
std::string windows_text(const WindowsReport& windows);
std::string locus_text(const RootLocus& locus);
std::string pade_text(const PadeResult& result);

}  // namespace delaystab::io
