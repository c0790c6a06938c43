#pragma once

#include <filesystem>
#include <string>

#include "annulus/reduction.hpp"

namespace annulus {

inline constexpr double kPlotFloor = 1e-16;

// Self-contained SVG of log10 singular value against index, one polyline per
// section size, with a legend. Values below kPlotFloor sit on a dashed floor
// line. Throws PreconditionError for an empty profile.
std::string render_decay_svg(const DecayProfile& profile, const std::string& title);
void emit_plot(const DecayProfile& profile, const std::filesystem::path& path, const std::string& title = "");

}  // namespace annulus
