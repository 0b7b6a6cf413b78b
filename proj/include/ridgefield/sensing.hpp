#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace ridgefield {

/// Random Gaussian measurement matrix, entries i.i.d. N(0, 1/m).
/// Fully determined by (m, n, seed).
struct SensingMatrix {
  int m = 0;
  int n = 0;
  Eigen::MatrixXd entries;
  uint64_t seed = 0;
};

// m = min(n, ceil(C * S * log(n / S))). Natural log by default; pass
// another base to change the convention.
int required_measurements(int S, int n, double C = 10.0, double log_base = 0.0);

SensingMatrix make_sensing_matrix(int m, int n, uint64_t seed);

Eigen::VectorXd measure(const SensingMatrix& psi, const Eigen::VectorXd& b);

}  // namespace ridgefield
