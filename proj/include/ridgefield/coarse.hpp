#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "ridgefield/field.hpp"
#include "ridgefield/image.hpp"

namespace ridgefield {

/// Normalized sample coordinate in [0,1]^2.
struct SamplePoint {
  double x = 0;
  double y = 0;
};

/// Double-angle observation vectors at the valid blocks, row-major order.
struct DoubleAngle {
  Eigen::VectorXd b_cos;  // cos(2 theta)
  Eigen::VectorXd b_sin;  // sin(2 theta)
  std::vector<SamplePoint> points;
};

// Gradient-based coarse orientation estimation: 3x3 Sobel derivatives,
// per-block structure tensor, angle perpendicular to the mean gradient.
// Angles follow the image convention (y down, positive angles toward
// increasing x rotated toward decreasing y). Blocks with zero gradient
// energy, or excluded by the mask, are invalid.
OrientationField estimate_coarse(const GrayImage& image, int w,
                                 const BlockMask* mask = nullptr);

// Extracts the (cos 2theta, sin 2theta) observations and normalized
// block-center coordinates at the valid blocks.
DoubleAngle double_angle(const OrientationField& field);

}  // namespace ridgefield
