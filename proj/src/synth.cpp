#include "ridgefield/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ridgefield {

namespace {

// Column index of cos(f * omega_x x) * cos/sin factors under u-major
// ordering; freq 0 maps to the constant factor.
int factor_index(int freq, bool is_sin) {
  if (freq == 0) return 0;  // sin(0) atoms do not exist, callers skip them
  return is_sin ? 2 * freq : 2 * freq - 1;
}

}  // namespace

GrayImage make_ridge_image(double angle, double period, int width, int height) {
  if (period < 4) throw std::runtime_error("period too small (minimum 4 px)");
  if (width < 1 || height < 1) throw std::runtime_error("empty image");
  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<size_t>(width) * height);
  const double sa = std::sin(angle), ca = std::cos(angle);
  const double f = 2.0 * std::numbers::pi / period;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      img.at(x, y) = 0.5 + 0.5 * std::cos(f * (x * sa + y * ca));
  return img;
}

OrientationField make_field_from_coefficients(const Eigen::VectorXd& beta_cos,
                                              const Eigen::VectorXd& beta_sin,
                                              const BasisSpec& spec, int cols, int rows,
                                              int w) {
  if (beta_cos.size() != spec.dim() || beta_sin.size() != spec.dim())
    throw std::runtime_error("coefficient length does not match basis dimension");
  if (cols < 1 || rows < 1) throw std::runtime_error("empty grid");

  std::vector<SamplePoint> pts;
  pts.reserve(static_cast<size_t>(cols) * rows);
  for (int by = 0; by < rows; ++by)
    for (int bx = 0; bx < cols; ++bx) pts.push_back({(bx + 0.5) / cols, (by + 0.5) / rows});
  const Eigen::VectorXd c = evaluate_expansion(spec, beta_cos, pts);
  const Eigen::VectorXd s = evaluate_expansion(spec, beta_sin, pts);

  OrientationField f;
  f.cols = cols;
  f.rows = rows;
  f.w = w;
  const size_t n = pts.size();
  f.theta.resize(n);
  f.valid.assign(n, 1);
  f.coherence.assign(n, 1.0);
  for (size_t i = 0; i < n; ++i)
    f.theta[i] = fold_half_turn(0.5 * std::atan2(s[static_cast<int>(i)], c[static_cast<int>(i)]));
  return f;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> phase_field_coefficients(const BasisSpec& spec,
                                                                     int p, int q,
                                                                     double phi) {
  if (p < 0 || q < 0 || p > spec.k || q > spec.k)
    throw std::runtime_error("phase frequencies must lie in [0, k]");
  const int side = 2 * spec.k + 1;
  Eigen::VectorXd bc = Eigen::VectorXd::Zero(spec.dim());
  Eigen::VectorXd bs = Eigen::VectorXd::Zero(spec.dim());

  // cos(P + Q + phi) and sin(P + Q + phi) expanded over the four products
  // {cosP, sinP} x {cosQ, sinQ}; factors with zero frequency collapse.
  auto add = [&](Eigen::VectorXd& beta, bool sin_x, bool sin_y, double coef) {
    if (coef == 0) return;
    if (sin_x && p == 0) return;  // sin(0 x) is identically zero
    if (sin_y && q == 0) return;
    beta[factor_index(p, sin_x) * side + factor_index(q, sin_y)] += coef;
  };
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  add(bc, false, false, cphi);
  add(bc, false, true, -sphi);
  add(bc, true, false, -sphi);
  add(bc, true, true, -cphi);
  add(bs, false, false, sphi);
  add(bs, false, true, cphi);
  add(bs, true, false, cphi);
  add(bs, true, true, -sphi);
  return {std::move(bc), std::move(bs)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> random_phase_field(const BasisSpec& spec,
                                                               uint64_t seed) {
  if (spec.k < 1) throw std::runtime_error("phase fields need k >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> freq(1, spec.k);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const int p = freq(rng);
  const int q = freq(rng);
  return phase_field_coefficients(spec, p, q, phase(rng));
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> random_dense_coefficients(const BasisSpec& spec,
                                                                      uint64_t seed,
                                                                      double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd bc(spec.dim()), bs(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) {
    bc[i] = amplitude * u(rng);
    bs[i] = amplitude * u(rng);
  }
  bc[0] += 1.0;  // dominant constant term keeps the modulus away from zero
  return {std::move(bc), std::move(bs)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> random_sparse_coefficients(const BasisSpec& spec,
                                                                       int S, uint64_t seed) {
  if (S < 1 || S > spec.dim()) throw std::runtime_error("sparsity out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  auto one = [&]() {
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(spec.dim());
    std::vector<int> idx(spec.dim());
    for (int i = 0; i < spec.dim(); ++i) idx[i] = i;
    for (int i = 0; i < S; ++i) {
      std::uniform_int_distribution<int> pick(i, spec.dim() - 1);
      std::swap(idx[i], idx[pick(rng)]);
      beta[idx[i]] = (rng() & 1 ? 1.0 : -1.0) * mag(rng);
    }
    return beta;
  };
  Eigen::VectorXd bc = one();
  Eigen::VectorXd bs = one();
  return {std::move(bc), std::move(bs)};
}

}  // namespace ridgefield
