#pragma once

// Static SVG plots with CSV sidecars holding the plotted samples.

#include <string>

#include "delaystab/crossings.hpp"
#include "delaystab/rootlocus.hpp"

namespace delaystab::plot {

/// Step plot of the unstable-root count over the delay, stable windows shaded.
std::string windows_svg(const WindowsReport& windows);
/// Columns tau,count,stable; one row per breakpoint.
std::string windows_csv(const WindowsReport& windows);

/// Trajectories as polylines in the s-plane, the imaginary axis, crossing
/// points and final poles marked.
std::string locus_svg(const RootLocus& locus, const std::vector<ImaginaryRoot>& crossings);
/// Columns branch,conjugate,tau,re,im.
std::string locus_csv(const RootLocus& locus);

/// path with its extension replaced by .csv
std::string sidecar_path(const std::string& svg_path);

/// Writes the SVG to path and the CSV next to it. Throws BadRequest when a
/// file cannot be written.
void write_plot(const std::string& path, const std::string& svg, const std::string& csv);

}  // namespace delaystab::plot
