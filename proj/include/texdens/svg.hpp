#pragma once

#include <string>

#include "texdens/report.hpp"

namespace texdens {

/// Two panels: PE histogram with fitted Beta densities shifted onto [1, 2],
/// and the alpha/beta scatter with high-texture fits in red.
std::string render_svg(const ReportSummary& summary);

} // namespace texdens
