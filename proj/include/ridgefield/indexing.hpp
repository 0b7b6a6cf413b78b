#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ridgefield/model.hpp"

namespace ridgefield {

/// Sparse coefficient pair of one fingerprint, the indexing unit.
struct SparseFeature {
  std::string id;
  std::vector<int> support_cos;
  std::vector<int> support_sin;
  std::vector<double> values_cos;
  std::vector<double> values_sin;
  int k = 0;
  int S = 0;
};

enum class FilterMode { exact_support, overlap, none };

struct QueryHit {
  std::string id;
  double similarity = 0;
};

struct QueryResult {
  std::vector<QueryHit> hits;
  size_t candidates = 0;  // records that passed the support filter
};

// Copies the supports and values out of a sparse or compressed-sparse
// model. Classical models are rejected.
SparseFeature extract_feature(const OrientationModel& model, const std::string& id);

class IndexStore {
 public:
  IndexStore(int k, int S) : k_(k), S_(S) {}

  void insert(SparseFeature feature);
  void remove(const std::string& id);

  // Candidate filter on the concatenated (cos, sin) support, then cosine
  // similarity over the support union, descending, ties by id.
  QueryResult query(const SparseFeature& probe, int top_k, FilterMode mode,
                    double tau = 0.5) const;

  void persist(const std::filesystem::path& path) const;
  static IndexStore open(const std::filesystem::path& path);

  int k() const { return k_; }
  int S() const { return S_; }
  size_t size() const { return records_.size(); }
  const std::map<std::string, SparseFeature>& records() const { return records_; }

 private:
  int k_;
  int S_;
  std::map<std::string, SparseFeature> records_;
  std::unordered_map<std::string, std::vector<std::string>> support_directory_;
};

}  // namespace ridgefield
