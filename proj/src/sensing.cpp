#include "ridgefield/sensing.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ridgefield {

namespace {

// Seeded standard-normal stream. Box-Muller on explicit 53-bit uniforms
// so the output is identical across standard libraries.
class NormalStream {
 public:
  explicit NormalStream(uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace

int required_measurements(int S, int n, double C, double log_base) {
  if (S < 1 || S >= n) throw std::runtime_error("sparsity must satisfy 1 <= S < n");
  if (C <= 0) throw std::runtime_error("constant C must be positive");
  double lg = std::log(static_cast<double>(n) / S);
  if (log_base > 0) lg /= std::log(log_base);
  const int m = static_cast<int>(std::ceil(C * S * lg));
  return std::min(n, m);
}

SensingMatrix make_sensing_matrix(int m, int n, uint64_t seed) {
  if (m < 1 || n < 1) throw std::runtime_error("sensing dimensions must be positive");
  if (m > n) throw std::runtime_error("sensing requires m <= n");

  SensingMatrix psi;
  psi.m = m;
  psi.n = n;
  psi.seed = seed;
  psi.entries.resize(m, n);
  NormalStream normals(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  // Row-major fill order is part of the determinism contract.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) psi.entries(i, j) = normals.next() * scale;
  return psi;
}

Eigen::VectorXd measure(const SensingMatrix& psi, const Eigen::VectorXd& b) {
  if (b.size() != psi.n) throw std::runtime_error("vector length does not match sensing width");
  if (!b.allFinite()) throw std::runtime_error("non-finite entries");
  return psi.entries * b;
}

}  // namespace ridgefield
