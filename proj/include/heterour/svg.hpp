#pragma once

#include <span>
#include <string>

namespace heterour {

/// Write a minimal SVG line chart of ys against 1..n (axes, tick labels,
/// one polyline). Deterministic text output.
void write_line_svg(const std::string& path, std::span<const double> ys,
                    const std::string& title);

}  // namespace heterour
