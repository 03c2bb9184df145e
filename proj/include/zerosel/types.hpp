#ifndef ZEROSEL_TYPES_HPP
#define ZEROSEL_TYPES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace zerosel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense instance labels: values[i] is the class of instance i, ids are
// 0-based and every id in [0, num_classes) occurs at least once.
struct ClassLabels {
  std::vector<int> values;
  int num_classes = 0;

  int n() const { return static_cast<int>(values.size()); }
};

// Validates density and builds the labels struct; message names the first
// missing class id.
inline ClassLabels make_class_labels(std::vector<int> values) {
  if (values.empty()) throw std::invalid_argument("labels: empty");
  int c = 0;
  for (int v : values) {
    if (v < 0) throw std::invalid_argument("labels: negative label " + std::to_string(v));
    c = std::max(c, v + 1);
  }
  std::vector<int> counts(static_cast<std::size_t>(c), 0);
  for (int v : values) counts[static_cast<std::size_t>(v)]++;
  for (int j = 0; j < c; ++j) {
    if (counts[static_cast<std::size_t>(j)] == 0)
      throw std::invalid_argument("labels: class " + std::to_string(j) + " has no members");
  }
  return ClassLabels{std::move(values), c};
}

// Per-class feature means plus the class sizes they were averaged over.
struct ClassCenters {
  Matrix centers;           // c x d
  std::vector<int> counts;  // length c, all >= 1
};

struct SynthParams {
  int n_seen = 0;
  int n_unseen = 0;
  int d = 0;
  int m = 0;
  int c_seen = 0;
  int c_unseen = 0;
  int k_info = 0;
  double attr_noise_sd = 0.0;
  double feature_noise_sd = 0.0;
};

struct SyntheticDataset {
  Matrix seen_x;
  ClassLabels seen_labels;
  Matrix seen_attrs;  // c_seen x m
  Matrix unseen_x;
  ClassLabels unseen_labels;
  Matrix unseen_attrs;  // c_unseen x m
  std::vector<int> informative_features;  // sorted ascending, size k_info
  SynthParams params;
  std::uint64_t seed = 0;
};

// Indices ordered by descending score; equal scores keep ascending index
// order so rankings are reproducible.
inline std::vector<int> rank_descending(const Vector& scores) {
  std::vector<int> idx(static_cast<std::size_t>(scores.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return idx;
}

}  // namespace zerosel

#endif
