#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace ridgefield {

/// 8-bit grayscale image with intensities normalized to [0,1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;  // row-major

  double at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  double& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
};

/// Per-block validity mask on the block grid.
struct BlockMask {
  int cols = 0;
  int rows = 0;
  std::vector<uint8_t> valid;  // row-major, 0/1

  bool at(int bx, int by) const { return valid[static_cast<size_t>(by) * cols + bx] != 0; }
};

// Reads an 8-bit grayscale PGM (P5) or PNG. Intensities are mapped
// linearly from [0,255] to [0,1].
GrayImage load_image(const std::filesystem::path& path);

// Writes a binary PGM (P5, maxval 255) with a canonical header.
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

// Reads a mask whose dimensions are either (cols, rows) directly or the
// full image pixel dimensions, in which case each block is decided by
// majority vote. Pixel > 127 marks a block valid.
BlockMask load_mask(const std::filesystem::path& path, int cols, int rows);

// Block grid covering the image with square blocks of side w.
// Trailing partial blocks are discarded.
std::pair<int, int> block_grid(const GrayImage& img, int w);

}  // namespace ridgefield
