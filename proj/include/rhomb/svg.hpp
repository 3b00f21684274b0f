#pragma once

// SVG drawing of patches.

#include <string>
#include <vector>

#include "rhomb/tiling.hpp"

namespace rhomb {

struct SvgStyle {
  double unit = 40.0;    // pixels per unit edge
  double margin = 10.0;  // pixels
  double stroke = 1.0;
  bool pseudolines = false;  // one polyline per pseudoline (skipped for patches with holes)
  bool arrows = false;       // edge orientation arrows
  std::vector<CycloInt> markers;  // points to circle, e.g. star centers
};

/// Fill colour used for a label.
std::string label_fill(int label);

/// A standalone SVG document. y points up in patch coordinates.
std::string render_svg(const Patch& p, const SvgStyle& style = {});

}  // namespace rhomb
