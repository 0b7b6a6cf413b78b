#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ridgefield/coarse.hpp"
#include "ridgefield/field.hpp"
#include "ridgefield/image.hpp"
#include "ridgefield/indexing.hpp"
#include "ridgefield/model.hpp"
#include "ridgefield/render.hpp"
#include "ridgefield/synth.hpp"

namespace {

using namespace ridgefield;

uint64_t default_seed() {
  if (const char* env = std::getenv("RIDGEFIELD_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"Fingerprint ridge orientation fields: coarse estimation, FOMFE model "
               "fitting (classical / sparse / compressed-sparse), reconstruction, "
               "rendering and sparse-coefficient indexing"};
  app.require_subcommand(1);

  // --- estimate ---
  std::string est_image, est_mask, est_out = "field.json";
  int est_w = 16;
  auto* estimate = app.add_subcommand("estimate", "Estimate the coarse orientation field");
  estimate->add_option("image", est_image, "Grayscale PGM/PNG input")->required();
  estimate->add_option("--mask", est_mask, "Validity mask (block grid or pixel resolution)");
  estimate->add_option("--block-size", est_w, "Block size in pixels")->capture_default_str();
  estimate->add_option("--out", est_out, "Output field JSON")->capture_default_str();

  // --- fit ---
  std::string fit_field, fit_variant = "classical", fit_out = "model.json";
  int fit_k = 5, fit_S = 20;
  double fit_C = 10.0, fit_tol = 1e-6;
  uint64_t fit_seed = default_seed();
  auto* fit = app.add_subcommand("fit", "Fit an orientation model to a field");
  fit->add_option("field", fit_field, "Input field JSON")->required();
  fit->add_option("--variant", fit_variant, "classical | sparse | cs")->capture_default_str();
  fit->add_option("--k", fit_k, "Basis order")->capture_default_str();
  fit->add_option("--S", fit_S, "Sparsity budget")->capture_default_str();
  fit->add_option("--C", fit_C, "Measurement constant")->capture_default_str();
  fit->add_option("--seed", fit_seed, "Sensing seed")->capture_default_str();
  fit->add_option("--tol", fit_tol, "Relative residual tolerance")->capture_default_str();
  fit->add_option("--out", fit_out, "Output model JSON")->capture_default_str();

  // --- render ---
  std::string ren_in, ren_grid, ren_image, ren_out = "out.svg";
  double ren_len = 0.8, ren_width = 1.5;
  auto* render = app.add_subcommand("render", "Render a field or model as SVG");
  render->add_option("input", ren_in, "Field or model JSON")->required();
  render->add_option("--grid", ren_grid, "Reconstruction grid COLSxROWS (models only)");
  render->add_option("--image", ren_image, "Underlay image");
  render->add_option("--stroke-length", ren_len, "Fraction of block size")->capture_default_str();
  render->add_option("--stroke-width", ren_width, "Stroke width in px")->capture_default_str();
  render->add_option("--out", ren_out, "Output SVG")->capture_default_str();

  // --- index ---
  auto* index = app.add_subcommand("index", "Sparse-coefficient index operations");
  index->require_subcommand(1);
  std::string idx_file;
  std::vector<std::string> idx_models;
  auto* idx_build = index->add_subcommand("build", "Build an index from sparse models");
  idx_build->add_option("index", idx_file, "Index file (JSON lines)")->required();
  idx_build->add_option("models", idx_models, "Sparse model JSON files")->required();
  auto* idx_add = index->add_subcommand("add", "Add models to an existing index");
  idx_add->add_option("index", idx_file, "Index file")->required();
  idx_add->add_option("models", idx_models, "Sparse model JSON files")->required();
  std::string idx_probe, idx_filter = "overlap";
  int idx_topk = 10;
  double idx_tau = 0.5;
  auto* idx_query = index->add_subcommand("query", "Query an index with a probe model");
  idx_query->add_option("index", idx_file, "Index file")->required();
  idx_query->add_option("probe", idx_probe, "Probe model JSON")->required();
  idx_query->add_option("--top-k", idx_topk, "Result count")->capture_default_str();
  idx_query->add_option("--filter", idx_filter, "exact | overlap | none")->capture_default_str();
  idx_query->add_option("--tau", idx_tau, "Overlap threshold")->capture_default_str();

  // --- synth ---
  auto* synth = app.add_subcommand("synth", "Generate synthetic test inputs");
  synth->require_subcommand(1);
  double sy_angle = 30.0, sy_period = 10.0;
  int sy_w = 512, sy_h = 512;
  std::string sy_out = "ridges.pgm";
  auto* sy_ridges = synth->add_subcommand("uniform-ridges", "Straight-ridge sinusoid image");
  sy_ridges->add_option("--angle", sy_angle, "Ridge angle in degrees")->capture_default_str();
  sy_ridges->add_option("--period", sy_period, "Ridge period in px")->capture_default_str();
  sy_ridges->add_option("--width", sy_w)->capture_default_str();
  sy_ridges->add_option("--height", sy_h)->capture_default_str();
  sy_ridges->add_option("--out", sy_out, "Output PGM")->capture_default_str();

  int sf_k = 5, sf_cols = 32, sf_rows = 32, sf_S = 0, sf_block = 16;
  uint64_t sf_seed = default_seed();
  std::string sf_out = "field.json";
  auto* sy_field = synth->add_subcommand("fomfe-field", "Field from random dense coefficients");
  sy_field->add_option("--k", sf_k)->capture_default_str();
  sy_field->add_option("--seed", sf_seed)->capture_default_str();
  sy_field->add_option("--cols", sf_cols)->capture_default_str();
  sy_field->add_option("--rows", sf_rows)->capture_default_str();
  sy_field->add_option("--block-size", sf_block)->capture_default_str();
  sy_field->add_option("--out", sf_out, "Output field JSON")->capture_default_str();
  auto* sy_sparse = synth->add_subcommand("sparse-fomfe-field",
                                          "Field from random S-sparse coefficients");
  sy_sparse->add_option("--k", sf_k)->capture_default_str();
  sy_sparse->add_option("--S", sf_S, "Nonzeros per coefficient half")->required();
  sy_sparse->add_option("--seed", sf_seed)->capture_default_str();
  sy_sparse->add_option("--cols", sf_cols)->capture_default_str();
  sy_sparse->add_option("--rows", sf_rows)->capture_default_str();
  sy_sparse->add_option("--block-size", sf_block)->capture_default_str();
  sy_sparse->add_option("--out", sf_out, "Output field JSON")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (estimate->parsed()) {
    GrayImage img = load_image(est_image);
    auto [cols, rows] = block_grid(img, est_w);
    std::optional<BlockMask> mask;
    if (!est_mask.empty()) mask = load_mask(est_mask, cols, rows);
    OrientationField field = estimate_coarse(img, est_w, mask ? &*mask : nullptr);
    save_field(field, est_out);
    double coh = 0;
    for (size_t i = 0; i < field.size(); ++i)
      if (field.valid[i]) coh += field.coherence[i];
    const int nv = field.valid_count();
    std::cout << "valid blocks: " << nv << "/" << field.size()
              << ", mean coherence: " << (nv ? coh / nv : 0.0) << "\n";
    return 0;
  }

  if (fit->parsed()) {
    OrientationField field = load_field(fit_field);
    BasisSpec spec;
    spec.k = fit_k;
    OrientationModel model;
    FitReport report;
    if (fit_variant == "classical") {
      std::tie(model, report) = fit_classical(field, spec);
    } else if (fit_variant == "sparse") {
      std::tie(model, report) = fit_sparse(field, spec, fit_S, fit_tol);
    } else if (fit_variant == "cs") {
      std::tie(model, report) = fit_cs(field, spec, fit_S, fit_C, fit_seed, fit_tol);
    } else {
      throw std::runtime_error("unknown variant: " + fit_variant);
    }
    model.source = fit_field;
    save_model(model, fit_out);
    std::cout << report.to_json() << "\n";
    return 0;
  }

  if (render->parsed()) {
    OrientationField field;
    std::ifstream probe_in(ren_in);
    std::string text((std::istreambuf_iterator<char>(probe_in)),
                     std::istreambuf_iterator<char>());
    if (text.find("\"variant\"") != std::string::npos) {
      OrientationModel model = model_from_json(text);
      int cols = model.grid_cols, rows = model.grid_rows;
      if (!ren_grid.empty()) {
        const auto x = ren_grid.find('x');
        if (x == std::string::npos) throw std::runtime_error("grid must be COLSxROWS");
        cols = std::stoi(ren_grid.substr(0, x));
        rows = std::stoi(ren_grid.substr(x + 1));
      }
      field = reconstruct(model, cols, rows);
    } else {
      field = field_from_json(text);
    }
    RenderStyle style;
    style.stroke_length = ren_len;
    style.stroke_width = ren_width;
    std::optional<GrayImage> underlay;
    if (!ren_image.empty()) {
      underlay = load_image(ren_image);
      style.overlay = true;
    }
    write_text(ren_out, render_svg(field, style, underlay ? &*underlay : nullptr));
    return 0;
  }

  if (idx_build->parsed() || idx_add->parsed()) {
    std::optional<IndexStore> store;
    if (idx_add->parsed()) store = IndexStore::open(idx_file);
    for (const auto& path : idx_models) {
      OrientationModel model = load_model(path);
      if (!store) store.emplace(model.spec.k, model.S);
      store->insert(extract_feature(model, std::filesystem::path(path).stem().string()));
    }
    if (!store) throw std::runtime_error("no models given");
    store->persist(idx_file);
    std::cout << "index: " << store->size() << " records\n";
    return 0;
  }

  if (idx_query->parsed()) {
    IndexStore store = IndexStore::open(idx_file);
    OrientationModel model = load_model(idx_probe);
    SparseFeature probe =
        extract_feature(model, std::filesystem::path(idx_probe).stem().string());
    FilterMode mode;
    if (idx_filter == "exact")
      mode = FilterMode::exact_support;
    else if (idx_filter == "overlap")
      mode = FilterMode::overlap;
    else if (idx_filter == "none")
      mode = FilterMode::none;
    else
      throw std::runtime_error("unknown filter: " + idx_filter);
    QueryResult result = store.query(probe, idx_topk, mode, idx_tau);
    std::cerr << result.candidates << " candidates\n";
    for (const auto& hit : result.hits)
      std::cout << hit.id << " " << hit.similarity << "\n";
    return 0;
  }

  if (sy_ridges->parsed()) {
    const double rad = sy_angle * std::numbers::pi / 180.0;
    save_pgm(make_ridge_image(rad, sy_period, sy_w, sy_h), sy_out);
    return 0;
  }

  if (sy_field->parsed() || sy_sparse->parsed()) {
    BasisSpec spec;
    spec.k = sf_k;
    Eigen::VectorXd bc, bs;
    if (sy_field->parsed()) {
      std::tie(bc, bs) = random_dense_coefficients(spec, sf_seed);
    } else {
      std::tie(bc, bs) = random_sparse_coefficients(spec, sf_S, sf_seed);
      // Sidecar with the generator coefficients and their nonzero count.
      nlohmann::json meta;
      meta["k"] = sf_k;
      meta["S"] = sf_S;
      meta["seed"] = sf_seed;
      int nnz = 0;
      for (int i = 0; i < bc.size(); ++i) nnz += bc[i] != 0;
      meta["nnz_cos"] = nnz;
      nnz = 0;
      for (int i = 0; i < bs.size(); ++i) nnz += bs[i] != 0;
      meta["nnz_sin"] = nnz;
      write_text(sf_out + ".meta", meta.dump() + "\n");
    }
    save_field(make_field_from_coefficients(bc, bs, spec, sf_cols, sf_rows, sf_block), sf_out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
