#pragma once

#include <string>
#include <vector>

#include "mlb_cli/runner.hpp"

namespace mlb::cli {

/// Two-panel SVG (velocities and temperatures against time) with dashed
/// horizontal lines at the conserved limits.
std::string relaxation_svg(const std::string& title, const std::vector<Sample>& samples,
                           const EquilibriumState& limit, const std::vector<std::string>& names);

}  // namespace mlb::cli
