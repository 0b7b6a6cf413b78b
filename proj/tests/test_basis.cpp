#include <doctest.h>

#include <Eigen/QR>
#include <random>

#include "ridgefield/basis.hpp"

using namespace ridgefield;

namespace {

std::vector<SamplePoint> uniform_grid(int cols, int rows) {
  std::vector<SamplePoint> pts;
  for (int by = 0; by < rows; ++by)
    for (int bx = 0; bx < cols; ++bx) pts.push_back({(bx + 0.5) / cols, (by + 0.5) / rows});
  return pts;
}

}  // namespace

TEST_CASE("k=0 basis is the constant function") {
  BasisSpec spec;
  spec.k = 0;
  BasisMatrix m = build_basis({{0.3, 0.7}, {0.1, 0.9}}, spec);
  CHECK(m.d() == 1);
  CHECK(m.entries(0, 0) == 1.0);
  CHECK(m.entries(1, 0) == 1.0);
}

TEST_CASE("k=5 basis has 121 columns") {
  BasisSpec spec;
  spec.k = 5;
  CHECK(spec.dim() == 121);
  BasisMatrix m = build_basis(uniform_grid(4, 4), spec);
  CHECK(m.d() == 121);
  CHECK(m.n() == 16);
}

TEST_CASE("k=1 row at the origin matches the u-major ordering") {
  BasisSpec spec;
  spec.k = 1;
  BasisMatrix m = build_basis({{0.0, 0.0}}, spec);
  const double expected[9] = {1, 1, 0, 1, 1, 0, 0, 0, 0};
  for (int j = 0; j < 9; ++j) CHECK(m.entries(0, j) == doctest::Approx(expected[j]));
}

TEST_CASE("column 0 is all ones; entries bounded by 1") {
  BasisSpec spec;
  BasisMatrix m = build_basis(uniform_grid(8, 8), spec);
  for (int i = 0; i < m.n(); ++i) {
    CHECK(m.entries(i, 0) == 1.0);
    for (int j = 0; j < m.d(); ++j) CHECK(std::abs(m.entries(i, j)) <= 1.0 + 1e-15);
  }
}

TEST_CASE("pure sine columns vanish at the origin") {
  BasisSpec spec;
  spec.k = 2;
  BasisMatrix m = build_basis({{0.0, 0.0}}, spec);
  const int side = 2 * spec.k + 1;
  for (int ui = 0; ui < side; ++ui)
    for (int vi = 0; vi < side; ++vi) {
      const bool has_sine = (ui > 0 && ui % 2 == 0) || (vi > 0 && vi % 2 == 0);
      if (has_sine) CHECK(m.entries(0, ui * side + vi) == doctest::Approx(0.0));
    }
}

TEST_CASE("Gram matrix on a uniform 32x32 grid has full rank") {
  BasisSpec spec;
  BasisMatrix m = build_basis(uniform_grid(32, 32), spec);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m.entries);
  CHECK(qr.rank() == m.d());
}

TEST_CASE("evaluate_expansion agrees with the matrix-vector product") {
  BasisSpec spec;
  spec.k = 3;
  auto pts = uniform_grid(6, 6);
  BasisMatrix m = build_basis(pts, spec);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::VectorXd beta(spec.dim());
  for (int i = 0; i < beta.size(); ++i) beta[i] = u(rng);

  Eigen::VectorXd direct = m.entries * beta;
  Eigen::VectorXd eval = evaluate_expansion(spec, beta, pts);
  CHECK((direct - eval).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("unit coefficient vectors extract basis columns") {
  BasisSpec spec;
  spec.k = 2;
  auto pts = uniform_grid(3, 3);
  BasisMatrix m = build_basis(pts, spec);
  for (int j = 0; j < m.d(); j += 7) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(spec.dim());
    e[j] = 1.0;
    Eigen::VectorXd col = evaluate_expansion(spec, e, pts);
    CHECK((col - m.entries.col(j)).lpNorm<Eigen::Infinity>() < 1e-15);
  }
}

TEST_CASE("constant and zero expansions") {
  BasisSpec spec;
  spec.k = 2;
  auto pts = uniform_grid(4, 4);
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(spec.dim());
  e0[0] = 1.0;
  Eigen::VectorXd ones = evaluate_expansion(spec, e0, pts);
  for (int i = 0; i < ones.size(); ++i) CHECK(ones[i] == doctest::Approx(1.0));
  Eigen::VectorXd zeros = evaluate_expansion(spec, Eigen::VectorXd::Zero(spec.dim()), pts);
  CHECK(zeros.norm() == 0.0);
}

TEST_CASE("error paths") {
  BasisSpec spec;
  CHECK_THROWS_AS(build_basis({}, spec), std::runtime_error);
  CHECK_THROWS_AS(build_basis({{1.5, 0.5}}, spec), std::runtime_error);
  CHECK_THROWS_AS(evaluate_expansion(spec, Eigen::VectorXd::Zero(5), {{0.5, 0.5}}),
                  std::runtime_error);
}
