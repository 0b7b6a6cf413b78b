#include "ridgefield/solvers.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ridgefield {

namespace {

void check_system(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  if (A.rows() == 0 || A.cols() == 0) throw std::runtime_error("empty system");
  if (A.rows() != b.size()) throw std::runtime_error("dimension mismatch");
  if (!A.allFinite() || !b.allFinite()) throw std::runtime_error("non-finite entries");
}

// Minimum-norm least squares on possibly rank-deficient columns.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  cod.setThreshold(1e-12);
  return cod.solve(b);
}

}  // namespace

Eigen::VectorXd SparseSolution::to_dense(int d) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (size_t i = 0; i < support.size(); ++i) out[support[i]] = values[i];
  return out;
}

LsSolution solve_ls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  check_system(A, b);
  LsSolution sol;
  sol.beta = min_norm_solve(A, b);
  sol.residual_norm = (b - A * sol.beta).norm();
  return sol;
}

SparseSolution solve_omp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int S,
                         double tol) {
  check_system(A, b);
  const int d = static_cast<int>(A.cols());
  if (S < 1 || S > std::min<int>(static_cast<int>(A.rows()), d))
    throw std::runtime_error("sparsity budget out of range");

  Eigen::VectorXd col_norms(d);
  bool any_nonzero = false;
  for (int j = 0; j < d; ++j) {
    col_norms[j] = A.col(j).norm();
    any_nonzero = any_nonzero || col_norms[j] > 0;
  }
  if (!any_nonzero) throw std::runtime_error("all columns are zero");

  const double b_norm = b.norm();
  SparseSolution sol;
  sol.sparsity_budget = S;

  std::vector<int> picked;  // selection order
  std::vector<char> in_support(d, 0);
  Eigen::VectorXd residual = b;
  Eigen::VectorXd coeffs;

  while (static_cast<int>(picked.size()) < S) {
    // Normalized correlation; ties and zero columns resolved by taking
    // the first strict maximum in index order.
    int best = -1;
    double best_corr = 0;
    for (int j = 0; j < d; ++j) {
      if (in_support[j] || col_norms[j] == 0) continue;
      const double c = std::abs(A.col(j).dot(residual)) / col_norms[j];
      if (c > best_corr) {
        best_corr = c;
        best = j;
      }
    }
    if (best < 0 || best_corr <= 1e-14 * std::max(1.0, b_norm)) break;

    picked.push_back(best);
    in_support[best] = 1;

    Eigen::MatrixXd As(A.rows(), picked.size());
    for (size_t i = 0; i < picked.size(); ++i) As.col(static_cast<int>(i)) = A.col(picked[i]);
    coeffs = min_norm_solve(As, b);
    residual = b - As * coeffs;
    ++sol.iterations;
    sol.residual_history.push_back(residual.norm());

    if (residual.norm() <= tol * b_norm) break;
  }

  // Report the support sorted by index, values aligned.
  std::vector<int> order(picked.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int c) { return picked[a] < picked[c]; });
  sol.support.reserve(picked.size());
  sol.values.reserve(picked.size());
  for (int i : order) {
    sol.support.push_back(picked[i]);
    sol.values.push_back(coeffs[i]);
  }
  sol.residual_norm = residual.norm();
  return sol;
}

}  // namespace ridgefield
