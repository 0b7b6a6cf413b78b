#include "ridgefield/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ridgefield {

namespace {

// u(x) = [1, cos(w x), sin(w x), cos(2 w x), sin(2 w x), ...], length 2k+1.
void fill_factor(double coord, double omega, int k, Eigen::VectorXd& out) {
  out[0] = 1.0;
  for (int j = 1; j <= k; ++j) {
    out[2 * j - 1] = std::cos(j * omega * coord);
    out[2 * j] = std::sin(j * omega * coord);
  }
}

}  // namespace

BasisMatrix build_basis(const std::vector<SamplePoint>& points, const BasisSpec& spec) {
  if (points.empty()) throw std::runtime_error("empty point list");
  if (spec.k < 0 || spec.omega_x <= 0 || spec.omega_y <= 0)
    throw std::runtime_error("invalid basis spec");

  const int side = 2 * spec.k + 1;
  const int d = side * side;
  BasisMatrix m;
  m.spec = spec;
  m.points = points;
  m.entries.resize(static_cast<int>(points.size()), d);

  Eigen::VectorXd u(side), v(side);
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.x < 0 || p.x > 1 || p.y < 0 || p.y > 1)
      throw std::runtime_error("sample point outside the unit domain");
    fill_factor(p.x, spec.omega_x, spec.k, u);
    fill_factor(p.y, spec.omega_y, spec.k, v);
    for (int ui = 0; ui < side; ++ui)
      for (int vi = 0; vi < side; ++vi)
        m.entries(static_cast<int>(i), ui * side + vi) = u[ui] * v[vi];
  }
  return m;
}

Eigen::VectorXd evaluate_expansion(const BasisSpec& spec, const Eigen::VectorXd& beta,
                                   const std::vector<SamplePoint>& points) {
  if (beta.size() != spec.dim())
    throw std::runtime_error("coefficient length does not match basis dimension");
  return build_basis(points, spec).entries * beta;
}

}  // namespace ridgefield
