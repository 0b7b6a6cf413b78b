#include "ridgefield/coarse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ridgefield {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

// 3x3 Sobel derivatives at (x, y), borders clamped. gy is taken along
// decreasing row index so that angles follow the image convention
// (positive angles rotate from +x toward the top of the image).
inline void sobel(const GrayImage& im, int x, int y, double& gx, double& gy) {
  const int xm = clampi(x - 1, 0, im.width - 1), xp = clampi(x + 1, 0, im.width - 1);
  const int ym = clampi(y - 1, 0, im.height - 1), yp = clampi(y + 1, 0, im.height - 1);
  gx = (im.at(xp, ym) + 2 * im.at(xp, y) + im.at(xp, yp)) -
       (im.at(xm, ym) + 2 * im.at(xm, y) + im.at(xm, yp));
  gy = (im.at(xm, ym) + 2 * im.at(x, ym) + im.at(xp, ym)) -
       (im.at(xm, yp) + 2 * im.at(x, yp) + im.at(xp, yp));
}

}  // namespace

OrientationField estimate_coarse(const GrayImage& image, int w, const BlockMask* mask) {
  auto [cols, rows] = block_grid(image, w);
  if (mask && (mask->cols != cols || mask->rows != rows))
    throw std::runtime_error("mask grid does not match the image block grid");

  OrientationField f;
  f.cols = cols;
  f.rows = rows;
  f.w = w;
  const size_t n = static_cast<size_t>(cols) * rows;
  f.theta.assign(n, std::nan(""));
  f.valid.assign(n, 0);
  f.coherence.assign(n, 0.0);

  for (int by = 0; by < rows; ++by) {
    for (int bx = 0; bx < cols; ++bx) {
      const size_t idx = static_cast<size_t>(by) * cols + bx;
      if (mask && !mask->at(bx, by)) continue;

      // Structure tensor accumulated over the block.
      double gxx = 0, gyy = 0, gxy = 0;
      for (int y = by * w; y < (by + 1) * w; ++y) {
        for (int x = bx * w; x < (bx + 1) * w; ++x) {
          double gx, gy;
          sobel(image, x, y, gx, gy);
          gxx += gx * gx;
          gyy += gy * gy;
          gxy += gx * gy;
        }
      }

      const double energy = gxx + gyy;
      if (energy <= 0) continue;  // flat block, no orientation

      f.theta[idx] =
          fold_half_turn(std::numbers::pi / 2 + 0.5 * std::atan2(2 * gxy, gxx - gyy));
      f.coherence[idx] = std::sqrt((gxx - gyy) * (gxx - gyy) + 4 * gxy * gxy) / energy;
      f.valid[idx] = 1;
    }
  }
  return f;
}

DoubleAngle double_angle(const OrientationField& field) {
  const int n = field.valid_count();
  if (n == 0) throw std::runtime_error("no valid blocks");

  DoubleAngle out;
  out.b_cos.resize(n);
  out.b_sin.resize(n);
  out.points.reserve(n);
  int i = 0;
  for (int by = 0; by < field.rows; ++by) {
    for (int bx = 0; bx < field.cols; ++bx) {
      if (!field.is_valid(bx, by)) continue;
      const double t = field.angle(bx, by);
      out.b_cos[i] = std::cos(2 * t);
      out.b_sin[i] = std::sin(2 * t);
      out.points.push_back({(bx + 0.5) / field.cols, (by + 0.5) / field.rows});
      ++i;
    }
  }
  return out;
}

}  // namespace ridgefield
