#pragma once

#include <Eigen/Core>
#include <numbers>
#include <vector>

#include "ridgefield/coarse.hpp"

namespace ridgefield {

/// Order-k 2D real Fourier tensor-product basis on the unit square.
/// Dimension d = (2k+1)^2; columns ordered u-major over the 1D factors
/// u = [1, cos(wx x), sin(wx x), cos(2 wx x), ...] and likewise v.
struct BasisSpec {
  int k = 5;
  double omega_x = 2.0 * std::numbers::pi;
  double omega_y = 2.0 * std::numbers::pi;

  int dim() const { return (2 * k + 1) * (2 * k + 1); }
};

struct BasisMatrix {
  Eigen::MatrixXd entries;  // n x d
  BasisSpec spec;
  std::vector<SamplePoint> points;

  int n() const { return static_cast<int>(entries.rows()); }
  int d() const { return static_cast<int>(entries.cols()); }
};

BasisMatrix build_basis(const std::vector<SamplePoint>& points, const BasisSpec& spec);

// Phi' * beta at arbitrary points.
Eigen::VectorXd evaluate_expansion(const BasisSpec& spec, const Eigen::VectorXd& beta,
                                   const std::vector<SamplePoint>& points);

}  // namespace ridgefield
