#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ridgefield {

/// Block-wise ridge orientation field. Angles live in [0, pi) since
/// ridges are undirected; invalid blocks carry NaN.
struct OrientationField {
  int cols = 0;
  int rows = 0;
  int w = 16;                     // block size in pixels
  std::vector<double> theta;      // radians, NaN where invalid
  std::vector<uint8_t> valid;     // row-major, 0/1
  std::vector<double> coherence;  // [0,1], 0 where invalid

  size_t size() const { return static_cast<size_t>(cols) * rows; }
  bool is_valid(int bx, int by) const { return valid[static_cast<size_t>(by) * cols + bx] != 0; }
  double angle(int bx, int by) const { return theta[static_cast<size_t>(by) * cols + bx]; }
  int valid_count() const;
};

// Folds an angle into [0, pi).
double fold_half_turn(double a);

std::string field_to_json(const OrientationField& f);
OrientationField field_from_json(const std::string& text);

void save_field(const OrientationField& f, const std::filesystem::path& path);
OrientationField load_field(const std::filesystem::path& path);

}  // namespace ridgefield
