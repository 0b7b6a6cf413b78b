#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>

#include "ridgefield/basis.hpp"
#include "ridgefield/field.hpp"
#include "ridgefield/image.hpp"

namespace ridgefield {

// I(x,y) = 1/2 + 1/2 cos(2 pi (x sin a + y cos a) / period); the
// iso-intensity (ridge) direction equals a in the image angle convention.
GrayImage make_ridge_image(double angle, double period, int width, int height);

// theta at each block center = 1/2 atan2(expansion_sin, expansion_cos)
// folded to [0, pi); all blocks valid.
OrientationField make_field_from_coefficients(const Eigen::VectorXd& beta_cos,
                                              const Eigen::VectorXd& beta_sin,
                                              const BasisSpec& spec, int cols, int rows,
                                              int w = 16);

// Coefficient pair of the linear-phase field theta = (2 pi (p x + q y) + phi) / 2.
// The induced (cos 2theta, sin 2theta) have unit modulus everywhere, so the
// pair is exactly recoverable from the angle field. Support size <= 4 per half.
std::pair<Eigen::VectorXd, Eigen::VectorXd> phase_field_coefficients(const BasisSpec& spec,
                                                                     int p, int q,
                                                                     double phi);

// Seeded linear-phase pair with 1 <= p, q <= max */
std::pair<Eigen::VectorXd, Eigen::VectorXd> random_phase_field(const BasisSpec& spec,
                                                               uint64_t seed);

// Seeded dense coefficient pair; the constant cos term dominates so the
// modulus stays away from zero and the angle field is smooth.
std::pair<Eigen::VectorXd, Eigen::VectorXd> random_dense_coefficients(const BasisSpec& spec,
                                                                      uint64_t seed,
                                                                      double amplitude = 0.2);

// Seeded pair with exactly S nonzeros per half, values in +-[0.5, 1.5].
std::pair<Eigen::VectorXd, Eigen::VectorXd> random_sparse_coefficients(const BasisSpec& spec,
                                                                       int S, uint64_t seed);

}  // namespace ridgefield
