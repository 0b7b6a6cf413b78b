#include "ridgefield/indexing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ridgefield {

using nlohmann::json;

namespace {

// Concatenated (cos, sin) support with sin indices offset by d.
std::vector<int> concat_support(const SparseFeature& f) {
  const int d = (2 * f.k + 1) * (2 * f.k + 1);
  std::vector<int> out(f.support_cos);
  out.reserve(f.support_cos.size() + f.support_sin.size());
  for (int i : f.support_sin) out.push_back(d + i);
  return out;
}

std::string support_signature(const std::vector<int>& support) {
  std::string sig;
  for (int i : support) {
    sig += std::to_string(i);
    sig += ',';
  }
  return sig;
}

double jaccard(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0, inter = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Cosine similarity on the concatenated sparse vectors; only nonzero
// positions contribute.
double cosine_similarity(const SparseFeature& a, const SparseFeature& b) {
  auto sparse_dot = [](const std::vector<int>& si, const std::vector<double>& vi,
                       const std::vector<int>& sj, const std::vector<double>& vj) {
    double dot = 0;
    size_t i = 0, j = 0;
    while (i < si.size() && j < sj.size()) {
      if (si[i] == sj[j]) {
        dot += vi[i] * vj[j];
        ++i;
        ++j;
      } else if (si[i] < sj[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return dot;
  };
  auto norm_sq = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return s;
  };
  const double dot = sparse_dot(a.support_cos, a.values_cos, b.support_cos, b.values_cos) +
                     sparse_dot(a.support_sin, a.values_sin, b.support_sin, b.values_sin);
  const double na = norm_sq(a.values_cos) + norm_sq(a.values_sin);
  const double nb = norm_sq(b.values_cos) + norm_sq(b.values_sin);
  if (na == 0 || nb == 0) return 0;
  return dot / std::sqrt(na * nb);
}

void validate_feature(const SparseFeature& f, int k, int S) {
  if (f.k != k || f.S != S) throw std::runtime_error("feature config mismatch");
  const int d = (2 * k + 1) * (2 * k + 1);
  auto check_half = [&](const std::vector<int>& support, const std::vector<double>& values) {
    if (support.size() != values.size())
      throw std::runtime_error("support/values length mismatch");
    if (static_cast<int>(support.size()) > S)
      throw std::runtime_error("support exceeds the sparsity budget");
    int prev = -1;
    for (int i : support) {
      if (i <= prev || i >= d) throw std::runtime_error("invalid support index");
      prev = i;
    }
  };
  check_half(f.support_cos, f.values_cos);
  check_half(f.support_sin, f.values_sin);
}

json feature_to_json(const SparseFeature& f) {
  json j;
  j["id"] = f.id;
  j["k"] = f.k;
  j["S"] = f.S;
  j["sc"] = f.support_cos;
  j["vc"] = f.values_cos;
  j["ss"] = f.support_sin;
  j["vs"] = f.values_sin;
  return j;
}

SparseFeature feature_from_json(const json& j) {
  SparseFeature f;
  f.id = j.at("id").get<std::string>();
  f.k = j.at("k").get<int>();
  f.S = j.at("S").get<int>();
  f.support_cos = j.at("sc").get<std::vector<int>>();
  f.values_cos = j.at("vc").get<std::vector<double>>();
  f.support_sin = j.at("ss").get<std::vector<int>>();
  f.values_sin = j.at("vs").get<std::vector<double>>();
  return f;
}

}  // namespace

SparseFeature extract_feature(const OrientationModel& model, const std::string& id) {
  if (model.variant == Variant::classical)
    throw std::runtime_error("dense model not indexable; refit with the sparse variant");
  SparseFeature f;
  f.id = id;
  f.support_cos = model.beta_cos.support;
  f.values_cos = model.beta_cos.values;
  f.support_sin = model.beta_sin.support;
  f.values_sin = model.beta_sin.values;
  f.k = model.spec.k;
  f.S = model.S;
  return f;
}

void IndexStore::insert(SparseFeature feature) {
  validate_feature(feature, k_, S_);
  if (records_.count(feature.id)) throw std::runtime_error("duplicate id: " + feature.id);
  const std::string sig = support_signature(concat_support(feature));
  support_directory_[sig].push_back(feature.id);
  records_.emplace(feature.id, std::move(feature));
}

void IndexStore::remove(const std::string& id) {
  auto it = records_.find(id);
  if (it == records_.end()) throw std::runtime_error("unknown id: " + id);
  const std::string sig = support_signature(concat_support(it->second));
  auto& ids = support_directory_[sig];
  ids.erase(std::find(ids.begin(), ids.end(), id));
  if (ids.empty()) support_directory_.erase(sig);
  records_.erase(it);
}

QueryResult IndexStore::query(const SparseFeature& probe, int top_k, FilterMode mode,
                              double tau) const {
  if (probe.k != k_ || probe.S != S_) throw std::runtime_error("probe config mismatch");
  if (top_k < 1) throw std::runtime_error("top_k must be positive");

  const std::vector<int> probe_support = concat_support(probe);
  QueryResult result;

  auto score = [&](const SparseFeature& rec) {
    result.hits.push_back({rec.id, cosine_similarity(probe, rec)});
    ++result.candidates;
  };

  if (mode == FilterMode::exact_support) {
    auto it = support_directory_.find(support_signature(probe_support));
    if (it != support_directory_.end())
      for (const auto& id : it->second) score(records_.at(id));
  } else {
    for (const auto& [id, rec] : records_) {
      if (mode == FilterMode::overlap && jaccard(probe_support, concat_support(rec)) < tau)
        continue;
      score(rec);
    }
  }

  std::stable_sort(result.hits.begin(), result.hits.end(),
                   [](const QueryHit& a, const QueryHit& b) {
                     if (a.similarity != b.similarity) return a.similarity > b.similarity;
                     return a.id < b.id;
                   });
  if (static_cast<int>(result.hits.size()) > top_k) result.hits.resize(top_k);
  return result;
}

void IndexStore::persist(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  json header;
  header["k"] = k_;
  header["S"] = S_;
  out << header.dump() << "\n";
  for (const auto& [id, rec] : records_) out << feature_to_json(rec).dump() << "\n";
}

IndexStore IndexStore::open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty index file");
  json header = json::parse(line);
  IndexStore store(header.at("k").get<int>(), header.at("S").get<int>());
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      store.insert(feature_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error("bad index record at line " + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
  return store;
}

}  // namespace ridgefield
