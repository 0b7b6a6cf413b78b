#pragma once

#include <string>

#include "ridgefield/field.hpp"
#include "ridgefield/image.hpp"

namespace ridgefield {

struct RenderStyle {
  double stroke_length = 0.8;  // fraction of block size, (0, 1]
  double stroke_width = 1.5;   // px
  bool overlay = false;        // draw over the underlay image instead of white
};

// One line segment per valid block, centered at the block center,
// direction theta. Valid SVG 1.1. The underlay, when given, is embedded
// as a base64 PNG.
std::string render_svg(const OrientationField& field, const RenderStyle& style = {},
                       const GrayImage* underlay = nullptr);

}  // namespace ridgefield
