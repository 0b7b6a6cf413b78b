#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ridgefield/coarse.hpp"
#include "ridgefield/synth.hpp"

using namespace ridgefield;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

double wrapped_diff(double a, double b) {
  double d = std::abs(a - b);
  return std::min(d, kPi - d);
}

}  // namespace

TEST_CASE("uniform ridge image: every interior block within 2 degrees") {
  const double angle = 30.0 * kDeg;
  GrayImage img = make_ridge_image(angle, 10.0, 256, 256);
  OrientationField f = estimate_coarse(img, 16);
  for (int by = 1; by < f.rows - 1; ++by)
    for (int bx = 1; bx < f.cols - 1; ++bx) {
      REQUIRE(f.is_valid(bx, by));
      CHECK(wrapped_diff(f.angle(bx, by), angle) < 2.0 * kDeg);
    }
}

TEST_CASE("constant image: all blocks invalid") {
  GrayImage img;
  img.width = 64;
  img.height = 64;
  img.pixels.assign(64 * 64, 0.5);
  OrientationField f = estimate_coarse(img, 16);
  CHECK(f.valid_count() == 0);
  for (double t : f.theta) CHECK(std::isnan(t));
  for (double c : f.coherence) CHECK(c == 0.0);
}

TEST_CASE("mask gates estimation without changing kept angles") {
  const double angle = 60.0 * kDeg;
  GrayImage img = make_ridge_image(angle, 10.0, 128, 128);
  OrientationField full = estimate_coarse(img, 16);

  BlockMask mask;
  mask.cols = full.cols;
  mask.rows = full.rows;
  mask.valid.assign(full.size(), 0);
  for (int by = 0; by < mask.rows; ++by)
    for (int bx = 0; bx < mask.cols / 2; ++bx)
      mask.valid[static_cast<size_t>(by) * mask.cols + bx] = 1;

  OrientationField gated = estimate_coarse(img, 16, &mask);
  for (int by = 0; by < full.rows; ++by)
    for (int bx = 0; bx < full.cols; ++bx) {
      if (bx < full.cols / 2) {
        CHECK(gated.angle(bx, by) == full.angle(bx, by));
      } else {
        CHECK(!gated.is_valid(bx, by));
      }
    }
}

TEST_CASE("mask dimension mismatch is an error") {
  GrayImage img = make_ridge_image(0.5, 10.0, 64, 64);
  BlockMask mask;
  mask.cols = 3;
  mask.rows = 3;
  mask.valid.assign(9, 1);
  CHECK_THROWS_AS(estimate_coarse(img, 16, &mask), std::runtime_error);
}

TEST_CASE("image smaller than one block is an error") {
  GrayImage img;
  img.width = 8;
  img.height = 8;
  img.pixels.assign(64, 0.0);
  CHECK_THROWS_AS(estimate_coarse(img, 16), std::runtime_error);
}

TEST_CASE("rotating the ridge pattern rotates the estimate") {
  for (int deg = 0; deg < 180; deg += 15) {
    const double angle = deg * kDeg;
    GrayImage img = make_ridge_image(angle, 10.0, 256, 256);
    OrientationField f = estimate_coarse(img, 16);
    for (int by = 1; by < f.rows - 1; ++by)
      for (int bx = 1; bx < f.cols - 1; ++bx)
        CHECK(wrapped_diff(f.angle(bx, by), angle) < 3.0 * kDeg);
  }
}

TEST_CASE("estimate is invariant under affine intensity change") {
  GrayImage img = make_ridge_image(40.0 * kDeg, 10.0, 128, 128);
  GrayImage scaled = img;
  for (double& p : scaled.pixels) p = 0.4 * p + 0.1;
  OrientationField a = estimate_coarse(img, 16);
  OrientationField b = estimate_coarse(scaled, 16);
  REQUIRE(a.valid == b.valid);
  for (size_t i = 0; i < a.size(); ++i)
    if (a.valid[i]) CHECK(wrapped_diff(a.theta[i], b.theta[i]) < 1e-9);
}

TEST_CASE("double_angle round trips through the angle reconstruction") {
  GrayImage img = make_ridge_image(75.0 * kDeg, 10.0, 128, 128);
  OrientationField f = estimate_coarse(img, 16);
  DoubleAngle obs = double_angle(f);
  REQUIRE(obs.b_cos.size() == f.valid_count());
  int i = 0;
  for (int by = 0; by < f.rows; ++by)
    for (int bx = 0; bx < f.cols; ++bx) {
      if (!f.is_valid(bx, by)) continue;
      CHECK(obs.b_cos[i] * obs.b_cos[i] + obs.b_sin[i] * obs.b_sin[i] ==
            doctest::Approx(1.0).epsilon(1e-12));
      const double back = fold_half_turn(0.5 * std::atan2(obs.b_sin[i], obs.b_cos[i]));
      CHECK(wrapped_diff(back, f.angle(bx, by)) < 1e-12);
      CHECK(obs.points[i].x == doctest::Approx((bx + 0.5) / f.cols));
      CHECK(obs.points[i].y == doctest::Approx((by + 0.5) / f.rows));
      ++i;
    }
}

TEST_CASE("double_angle on simple constant fields") {
  OrientationField f;
  f.cols = 2;
  f.rows = 2;
  f.valid.assign(4, 1);
  f.coherence.assign(4, 1.0);

  f.theta.assign(4, 0.0);
  DoubleAngle obs = double_angle(f);
  for (int i = 0; i < 4; ++i) {
    CHECK(obs.b_cos[i] == doctest::Approx(1.0));
    CHECK(obs.b_sin[i] == doctest::Approx(0.0));
  }

  f.theta.assign(4, kPi / 4);
  obs = double_angle(f);
  CHECK(obs.b_cos[0] == doctest::Approx(0.0));
  CHECK(obs.b_sin[0] == doctest::Approx(1.0));

  f.theta.assign(4, 3 * kPi / 4);
  obs = double_angle(f);
  CHECK(obs.b_cos[0] == doctest::Approx(0.0));
  CHECK(obs.b_sin[0] == doctest::Approx(-1.0));

  f.valid.assign(4, 0);
  CHECK_THROWS_AS(double_angle(f), std::runtime_error);
}
