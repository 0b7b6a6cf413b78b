#include <doctest.h>

#include <cmath>
#include <random>

#include "ridgefield/basis.hpp"
#include "ridgefield/sensing.hpp"
#include "ridgefield/solvers.hpp"

using namespace ridgefield;

TEST_CASE("required_measurements evaluates the natural-log rule") {
  // ceil(10 * 20 * ln(1024/20)) = ceil(787.19) = 788
  CHECK(required_measurements(20, 1024, 10.0) == 788);
  CHECK(required_measurements(1, 3, 1.0) == 2);  // ceil(ln 3)
  // 200 * ln 20 = 599.1 -> 600, clamped to n = 400
  CHECK(required_measurements(20, 400, 10.0) == 400);
}

TEST_CASE("required_measurements supports other log bases") {
  // base 10: ceil(200 * log10(51.2)) = ceil(341.9) = 342
  CHECK(required_measurements(20, 1024, 10.0, 10.0) == 342);
}

TEST_CASE("required_measurements error paths") {
  CHECK_THROWS_AS(required_measurements(20, 20, 10.0), std::runtime_error);
  CHECK_THROWS_AS(required_measurements(0, 10, 10.0), std::runtime_error);
  CHECK_THROWS_AS(required_measurements(2, 10, 0.0), std::runtime_error);
}

TEST_CASE("sensing matrix is a deterministic function of the seed") {
  SensingMatrix a = make_sensing_matrix(32, 64, 99);
  SensingMatrix b = make_sensing_matrix(32, 64, 99);
  CHECK(a.entries == b.entries);
  SensingMatrix c = make_sensing_matrix(32, 64, 100);
  CHECK(a.entries != c.entries);
}

TEST_CASE("column norms concentrate near 1 under the 1/sqrt(m) scaling") {
  SensingMatrix psi = make_sensing_matrix(788, 1024, 7);
  double mean = 0;
  for (int j = 0; j < psi.n; ++j) mean += psi.entries.col(j).norm();
  mean /= psi.n;
  CHECK(mean > 0.95);
  CHECK(mean < 1.05);
}

TEST_CASE("sensing dimension errors") {
  CHECK_THROWS_AS(make_sensing_matrix(0, 8, 1), std::runtime_error);
  CHECK_THROWS_AS(make_sensing_matrix(8, 0, 1), std::runtime_error);
  CHECK_THROWS_AS(make_sensing_matrix(9, 8, 1), std::runtime_error);
}

TEST_CASE("measure basics and the naive dot-product oracle") {
  SensingMatrix psi = make_sensing_matrix(16, 40, 5);
  CHECK(measure(psi, Eigen::VectorXd::Zero(40)).norm() == 0.0);

  Eigen::VectorXd e7 = Eigen::VectorXd::Zero(40);
  e7[7] = 1.0;
  CHECK((measure(psi, e7) - psi.entries.col(7)).norm() < 1e-15);

  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  Eigen::VectorXd b(40);
  for (int i = 0; i < 40; ++i) b[i] = g(rng);
  Eigen::VectorXd got = measure(psi, b);
  for (int i = 0; i < 16; ++i) {
    double dot = 0;
    for (int j = 0; j < 40; ++j) dot += psi.entries(i, j) * b[j];
    CHECK(std::abs(got[i] - dot) < 1e-12);
  }

  CHECK_THROWS_AS(measure(psi, Eigen::VectorXd::Zero(41)), std::runtime_error);
}

TEST_CASE("measure is linear") {
  SensingMatrix psi = make_sensing_matrix(24, 60, 8);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  Eigen::VectorXd b1(60), b2(60);
  for (int i = 0; i < 60; ++i) {
    b1[i] = g(rng);
    b2[i] = g(rng);
  }
  const double alpha = 2.75;
  Eigen::VectorXd lhs = measure(psi, alpha * b1 + b2);
  Eigen::VectorXd rhs = alpha * measure(psi, b1) + measure(psi, b2);
  CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("compressed recovery of sparse FOMFE coefficients") {
  BasisSpec spec;
  std::vector<SamplePoint> pts;
  for (int by = 0; by < 32; ++by)
    for (int bx = 0; bx < 32; ++bx) pts.push_back({(bx + 0.5) / 32, (by + 0.5) / 32});
  Eigen::MatrixXd Phi = build_basis(pts, spec).entries;

  const int m = required_measurements(20, 1024, 10.0);
  int ok = 0;
  for (uint64_t t = 0; t < 20; ++t) {
    std::mt19937_64 rng(300 + t);
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(121);
    std::vector<int> idx(121);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int i = 0; i < 20; ++i) beta[idx[i]] = (rng() & 1 ? 1.0 : -1.0) * mag(rng);

    SensingMatrix psi = make_sensing_matrix(m, 1024, 1000 + t);
    Eigen::VectorXd g = measure(psi, Phi * beta);
    SparseSolution sol = solve_omp(psi.entries * Phi, g, 20, 0.0);
    if ((sol.to_dense(121) - beta).norm() / beta.norm() <= 1e-6) ++ok;
  }
  CHECK(ok >= 18);
}
