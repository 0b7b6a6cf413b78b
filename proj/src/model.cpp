#include "ridgefield/model.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ridgefield/coarse.hpp"
#include "ridgefield/sensing.hpp"

namespace ridgefield {

using nlohmann::json;

namespace {
constexpr int kSchemaVersion = 1;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::vector<SamplePoint> grid_centers(int cols, int rows, const BlockMask* mask) {
  std::vector<SamplePoint> pts;
  pts.reserve(static_cast<size_t>(cols) * rows);
  for (int by = 0; by < rows; ++by)
    for (int bx = 0; bx < cols; ++bx) {
      if (mask && !mask->at(bx, by)) continue;
      pts.push_back({(bx + 0.5) / cols, (by + 0.5) / rows});
    }
  return pts;
}

CoefficientHalf dense_half(Eigen::VectorXd beta) {
  CoefficientHalf h;
  h.is_sparse = false;
  h.dense = std::move(beta);
  return h;
}

CoefficientHalf sparse_half(const SparseSolution& s) {
  CoefficientHalf h;
  h.is_sparse = true;
  h.support = s.support;
  h.values = s.values;
  return h;
}

// Shared fit preamble: observations, sample points, design matrix.
struct FitInputs {
  DoubleAngle obs;
  BasisMatrix phi;
};

FitInputs prepare_fit(const OrientationField& field, const BasisSpec& spec) {
  FitInputs in;
  in.obs = double_angle(field);  // throws on zero valid blocks
  if (in.obs.b_cos.size() < spec.dim())
    std::cerr << "warning: " << in.obs.b_cos.size() << " samples for " << spec.dim()
              << " basis functions; falling back to the minimum-norm fit\n";
  in.phi = build_basis(in.obs.points, spec);
  return in;
}

FitReport make_report(const OrientationModel& model, const OrientationField& field,
                      double res_cos, double res_sin) {
  FitReport r;
  r.n_samples = field.valid_count();
  r.residual_cos = res_cos;
  r.residual_sin = res_sin;
  r.nnz_cos = model.beta_cos.nnz();
  r.nnz_sin = model.beta_sin.nnz();
  OrientationField recon = reconstruct(model, field.cols, field.rows);
  r.angular_rmse_deg = angular_error_deg(recon, field);
  return r;
}

json half_to_json(const CoefficientHalf& h, int S) {
  if (!h.is_sparse) {
    return json(std::vector<double>(h.dense.data(), h.dense.data() + h.dense.size()));
  }
  json j;
  j["support"] = h.support;
  j["values"] = h.values;
  j["S"] = S;
  return j;
}

CoefficientHalf half_from_json(const json& j, int d) {
  CoefficientHalf h;
  if (j.is_array()) {
    h.is_sparse = false;
    auto v = j.get<std::vector<double>>();
    if (static_cast<int>(v.size()) != d)
      throw std::runtime_error("dense coefficient length mismatch");
    h.dense = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<int>(v.size()));
    return h;
  }
  h.is_sparse = true;
  h.support = j.at("support").get<std::vector<int>>();
  h.values = j.at("values").get<std::vector<double>>();
  const int S = j.at("S").get<int>();
  if (h.support.size() != h.values.size())
    throw std::runtime_error("support/values length mismatch");
  if (static_cast<int>(h.support.size()) > S)
    throw std::runtime_error("support exceeds the declared sparsity budget");
  int prev = -1;
  for (int idx : h.support) {
    if (idx <= prev || idx >= d) throw std::runtime_error("invalid support index");
    prev = idx;
  }
  return h;
}

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::classical: return "classical";
    case Variant::sparse: return "sparse";
    case Variant::compressed_sparse: return "compressed-sparse";
  }
  throw std::runtime_error("unknown variant");
}

Variant variant_from_name(const std::string& name) {
  if (name == "classical") return Variant::classical;
  if (name == "sparse") return Variant::sparse;
  if (name == "compressed-sparse" || name == "cs") return Variant::compressed_sparse;
  throw std::runtime_error("unknown variant: " + name);
}

int CoefficientHalf::nnz() const {
  if (is_sparse) return static_cast<int>(support.size());
  int n = 0;
  for (int i = 0; i < dense.size(); ++i) n += dense[i] != 0;
  return n;
}

Eigen::VectorXd CoefficientHalf::to_dense(int d) const {
  if (!is_sparse) {
    if (dense.size() != d) throw std::runtime_error("coefficient length mismatch");
    return dense;
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (size_t i = 0; i < support.size(); ++i) out[support[i]] = values[i];
  return out;
}

std::string FitReport::to_json() const {
  json j;
  j["n_samples"] = n_samples;
  j["residual_cos"] = residual_cos;
  j["residual_sin"] = residual_sin;
  j["angular_rmse_deg"] = angular_rmse_deg;
  j["nnz_cos"] = nnz_cos;
  j["nnz_sin"] = nnz_sin;
  return j.dump();
}

std::pair<OrientationModel, FitReport> fit_classical(const OrientationField& field,
                                                     const BasisSpec& spec) {
  FitInputs in = prepare_fit(field, spec);
  LsSolution sc = solve_ls(in.phi.entries, in.obs.b_cos);
  LsSolution ss = solve_ls(in.phi.entries, in.obs.b_sin);

  OrientationModel m;
  m.variant = Variant::classical;
  m.spec = spec;
  m.beta_cos = dense_half(std::move(sc.beta));
  m.beta_sin = dense_half(std::move(ss.beta));
  m.w = field.w;
  m.grid_cols = field.cols;
  m.grid_rows = field.rows;
  FitReport r = make_report(m, field, sc.residual_norm, ss.residual_norm);
  return {std::move(m), r};
}

std::pair<OrientationModel, FitReport> fit_sparse(const OrientationField& field,
                                                  const BasisSpec& spec, int S, double tol) {
  if (S < 1 || S > spec.dim()) throw std::runtime_error("sparsity budget out of range");
  FitInputs in = prepare_fit(field, spec);
  SparseSolution sc = solve_omp(in.phi.entries, in.obs.b_cos, S, tol);
  SparseSolution ss = solve_omp(in.phi.entries, in.obs.b_sin, S, tol);

  OrientationModel m;
  m.variant = Variant::sparse;
  m.spec = spec;
  m.beta_cos = sparse_half(sc);
  m.beta_sin = sparse_half(ss);
  m.w = field.w;
  m.grid_cols = field.cols;
  m.grid_rows = field.rows;
  m.S = S;
  FitReport r = make_report(m, field, sc.residual_norm, ss.residual_norm);
  return {std::move(m), r};
}

std::pair<OrientationModel, FitReport> fit_cs(const OrientationField& field,
                                              const BasisSpec& spec, int S, double C,
                                              uint64_t seed, double tol) {
  if (S < 1 || S > spec.dim()) throw std::runtime_error("sparsity budget out of range");
  FitInputs in = prepare_fit(field, spec);
  const int n = static_cast<int>(in.obs.b_cos.size());
  const int m_rows = required_measurements(S, n, C);
  SensingMatrix psi = make_sensing_matrix(m_rows, n, seed);
  const Eigen::MatrixXd sensed = psi.entries * in.phi.entries;
  SparseSolution sc = solve_omp(sensed, measure(psi, in.obs.b_cos), S, tol);
  SparseSolution ss = solve_omp(sensed, measure(psi, in.obs.b_sin), S, tol);

  OrientationModel m;
  m.variant = Variant::compressed_sparse;
  m.spec = spec;
  m.beta_cos = sparse_half(sc);
  m.beta_sin = sparse_half(ss);
  m.w = field.w;
  m.grid_cols = field.cols;
  m.grid_rows = field.rows;
  m.S = S;
  m.sensing = SensingInfo{m_rows, n, seed};
  FitReport r = make_report(m, field, sc.residual_norm, ss.residual_norm);
  return {std::move(m), r};
}

OrientationField reconstruct(const OrientationModel& model, int cols, int rows,
                             const BlockMask* mask) {
  if (cols < 1 || rows < 1) throw std::runtime_error("empty reconstruction grid");
  const int d = model.spec.dim();
  const Eigen::VectorXd bc = model.beta_cos.to_dense(d);
  const Eigen::VectorXd bs = model.beta_sin.to_dense(d);
  std::vector<SamplePoint> pts = grid_centers(cols, rows, nullptr);
  const Eigen::VectorXd c = evaluate_expansion(model.spec, bc, pts);
  const Eigen::VectorXd s = evaluate_expansion(model.spec, bs, pts);

  OrientationField f;
  f.cols = cols;
  f.rows = rows;
  f.w = model.w;
  const size_t n = static_cast<size_t>(cols) * rows;
  f.theta.assign(n, std::nan(""));
  f.valid.assign(n, 0);
  f.coherence.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    if (mask && !mask->valid[i]) continue;
    f.theta[i] = fold_half_turn(0.5 * std::atan2(s[static_cast<int>(i)], c[static_cast<int>(i)]));
    f.coherence[i] = std::min(1.0, std::hypot(c[static_cast<int>(i)], s[static_cast<int>(i)]));
    f.valid[i] = 1;
  }
  return f;
}

double angular_error_deg(const OrientationField& a, const OrientationField& b) {
  if (a.cols != b.cols || a.rows != b.rows)
    throw std::runtime_error("field grids differ");
  double sum = 0;
  int n = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a.valid[i] || !b.valid[i]) continue;
    double diff = std::abs(a.theta[i] - b.theta[i]);
    diff = std::min(diff, std::numbers::pi - diff);
    sum += diff * diff;
    ++n;
  }
  if (n == 0) throw std::runtime_error("no common valid blocks");
  return std::sqrt(sum / n) * kRadToDeg;
}

std::string model_to_json(const OrientationModel& model) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["variant"] = variant_name(model.variant);
  j["basis"] = {{"k", model.spec.k},
                {"omega_x", model.spec.omega_x},
                {"omega_y", model.spec.omega_y},
                {"ordering", "u-major"}};
  j["w"] = model.w;
  j["grid"] = {{"cols", model.grid_cols}, {"rows", model.grid_rows}};
  j["beta_cos"] = half_to_json(model.beta_cos, model.S);
  j["beta_sin"] = half_to_json(model.beta_sin, model.S);
  if (model.S > 0) j["S"] = model.S;
  if (model.sensing) {
    j["sensing"] = {{"m", model.sensing->m},
                    {"n", model.sensing->n},
                    {"seed", model.sensing->seed},
                    {"scale", "inv-sqrt-m"},
                    {"log_base", "e"}};
  }
  j["provenance"] = {{"source", model.source}};
  return j.dump();
}

OrientationModel model_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw std::runtime_error("unsupported model schema version");

  OrientationModel m;
  m.variant = variant_from_name(j.at("variant").get<std::string>());
  const auto& basis = j.at("basis");
  m.spec.k = basis.at("k").get<int>();
  m.spec.omega_x = basis.at("omega_x").get<double>();
  m.spec.omega_y = basis.at("omega_y").get<double>();
  if (basis.at("ordering").get<std::string>() != "u-major")
    throw std::runtime_error("unsupported basis ordering");
  m.w = j.at("w").get<int>();
  m.grid_cols = j.at("grid").at("cols").get<int>();
  m.grid_rows = j.at("grid").at("rows").get<int>();
  m.S = j.value("S", 0);
  m.beta_cos = half_from_json(j.at("beta_cos"), m.spec.dim());
  m.beta_sin = half_from_json(j.at("beta_sin"), m.spec.dim());
  if (j.contains("sensing")) {
    const auto& s = j.at("sensing");
    m.sensing = SensingInfo{s.at("m").get<int>(), s.at("n").get<int>(),
                            s.at("seed").get<uint64_t>()};
  }
  if (j.contains("provenance")) m.source = j["provenance"].value("source", "");

  const bool halves_sparse = m.beta_cos.is_sparse && m.beta_sin.is_sparse;
  if (m.variant == Variant::classical && halves_sparse)
    throw std::runtime_error("classical model with sparse halves");
  if (m.variant != Variant::classical && !halves_sparse)
    throw std::runtime_error("sparse model with dense halves");
  if ((m.variant == Variant::compressed_sparse) != m.sensing.has_value())
    throw std::runtime_error("sensing metadata inconsistent with variant");
  return m;
}

void save_model(const OrientationModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << model_to_json(model) << "\n";
}

OrientationModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace ridgefield
