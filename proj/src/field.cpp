#include "ridgefield/field.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ridgefield {

using nlohmann::json;

int OrientationField::valid_count() const {
  int n = 0;
  for (uint8_t v : valid) n += v != 0;
  return n;
}

double fold_half_turn(double a) {
  const double pi = std::numbers::pi;
  a = std::fmod(a, pi);
  if (a < 0) a += pi;
  if (a >= pi) a = 0;  // fmod rounding can land exactly on pi
  return a;
}

std::string field_to_json(const OrientationField& f) {
  json j;
  j["cols"] = f.cols;
  j["rows"] = f.rows;
  j["w"] = f.w;
  json theta = json::array();
  for (size_t i = 0; i < f.theta.size(); ++i) {
    if (f.valid[i])
      theta.push_back(f.theta[i]);
    else
      theta.push_back(nullptr);
  }
  j["theta"] = std::move(theta);
  json valid = json::array();
  for (uint8_t v : f.valid) valid.push_back(v != 0);
  j["valid"] = std::move(valid);
  j["coherence"] = f.coherence;
  return j.dump();
}

OrientationField field_from_json(const std::string& text) {
  json j = json::parse(text);
  OrientationField f;
  f.cols = j.at("cols").get<int>();
  f.rows = j.at("rows").get<int>();
  f.w = j.at("w").get<int>();
  if (f.cols <= 0 || f.rows <= 0) throw std::runtime_error("invalid field grid");

  const size_t n = static_cast<size_t>(f.cols) * f.rows;
  const auto& theta = j.at("theta");
  const auto& valid = j.at("valid");
  const auto& coh = j.at("coherence");
  if (theta.size() != n || valid.size() != n || coh.size() != n)
    throw std::runtime_error("field array length mismatch");

  f.theta.resize(n);
  f.valid.resize(n);
  f.coherence.resize(n);
  for (size_t i = 0; i < n; ++i) {
    f.valid[i] = valid[i].get<bool>() ? 1 : 0;
    f.theta[i] = theta[i].is_null() ? std::nan("") : theta[i].get<double>();
    f.coherence[i] = coh[i].is_null() ? 0.0 : coh[i].get<double>();
    if (f.valid[i] && !std::isfinite(f.theta[i]))
      throw std::runtime_error("valid block with non-finite angle");
  }
  return f;
}

void save_field(const OrientationField& f, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << field_to_json(f) << "\n";
}

OrientationField load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return field_from_json(ss.str());
}

}  // namespace ridgefield
