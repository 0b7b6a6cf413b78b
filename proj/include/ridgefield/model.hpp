#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ridgefield/basis.hpp"
#include "ridgefield/field.hpp"
#include "ridgefield/image.hpp"
#include "ridgefield/solvers.hpp"

namespace ridgefield {

enum class Variant { classical, sparse, compressed_sparse };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// One coefficient vector, stored dense or by its support.
struct CoefficientHalf {
  bool is_sparse = false;
  Eigen::VectorXd dense;        // used when !is_sparse
  std::vector<int> support;     // used when is_sparse
  std::vector<double> values;

  int nnz() const;
  Eigen::VectorXd to_dense(int d) const;
};

struct SensingInfo {
  int m = 0;
  int n = 0;
  uint64_t seed = 0;
};

struct OrientationModel {
  Variant variant = Variant::classical;
  BasisSpec spec;
  CoefficientHalf beta_cos;
  CoefficientHalf beta_sin;
  int w = 16;
  int grid_cols = 0;
  int grid_rows = 0;
  int S = 0;  // sparsity budget, 0 for classical
  std::optional<SensingInfo> sensing;
  std::string source;  // provenance: image path or generator tag
};

struct FitReport {
  int n_samples = 0;
  double residual_cos = 0;
  double residual_sin = 0;
  double angular_rmse_deg = 0;  // vs. the input field at the fit points
  int nnz_cos = 0;
  int nnz_sin = 0;

  std::string to_json() const;
};

std::pair<OrientationModel, FitReport> fit_classical(const OrientationField& field,
                                                     const BasisSpec& spec);

std::pair<OrientationModel, FitReport> fit_sparse(const OrientationField& field,
                                                  const BasisSpec& spec, int S,
                                                  double tol = 1e-6);

std::pair<OrientationModel, FitReport> fit_cs(const OrientationField& field,
                                              const BasisSpec& spec, int S, double C,
                                              uint64_t seed, double tol = 1e-6);

// Evaluates the model on a block grid; every requested block is valid
// (the model extrapolates). Coherence is min(1, sqrt(c^2 + s^2)).
OrientationField reconstruct(const OrientationModel& model, int cols, int rows,
                             const BlockMask* mask = nullptr);

// RMSE of the wrapped angular difference over common-valid blocks, degrees.
double angular_error_deg(const OrientationField& a, const OrientationField& b);

std::string model_to_json(const OrientationModel& model);
OrientationModel model_from_json(const std::string& text);
void save_model(const OrientationModel& model, const std::filesystem::path& path);
OrientationModel load_model(const std::filesystem::path& path);

}  // namespace ridgefield
