#pragma once

#include <Eigen/Core>
#include <vector>

namespace ridgefield {

struct LsSolution {
  Eigen::VectorXd beta;
  double residual_norm = 0;
};

struct SparseSolution {
  std::vector<int> support;     // strictly increasing
  std::vector<double> values;   // aligned with support
  int sparsity_budget = 0;
  double residual_norm = 0;
  int iterations = 0;
  std::vector<double> residual_history;  // norm after each refit

  Eigen::VectorXd to_dense(int d) const;
};

// Minimizes ||b - A beta||_2 via orthogonal factorization; returns the
// minimum-norm solution when A is rank deficient.
LsSolution solve_ls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// Orthogonal matching pursuit: select the column most correlated with
// the residual (normalized correlation, ties broken by lowest index),
// refit by least squares on the selected columns, repeat until the
// support reaches S or the residual drops below tol * ||b||.
SparseSolution solve_omp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int S,
                         double tol = 1e-6);

}  // namespace ridgefield
