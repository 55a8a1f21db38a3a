#pragma once

#include <cstddef>
#include <string>

#include "zetapack/packer.hpp"

namespace zetapack {

struct SvgOptions {
  // Caps keep huge runs renderable; squares are drawn in placement order
  // (largest first), so the omitted ones are the smallest.
  std::size_t max_squares_drawn = 20000;
  std::size_t max_residuals_drawn = 20000;
  double stroke_width = 0.002;  // container units
  bool color_by_depth = true;   // hue cycles with the square index
};

// SVG 1.1 document: container outline, placed squares as filled rects,
// residual boxes hatched. Coordinates match the placement log; the viewBox
// equals the container dimensions.
std::string render_svg(const PackingReport& report, const SvgOptions& options = {});

}  // namespace zetapack
