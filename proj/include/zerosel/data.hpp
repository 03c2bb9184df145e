#ifndef ZEROSEL_DATA_HPP
#define ZEROSEL_DATA_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zerosel/types.hpp"

namespace zerosel {

// CSV is the one matrix format: comma-separated, no header, '.' decimal
// point, one row per line. Values written with 17 significant digits so a
// save/load round trip is exact. Labels are one non-negative integer per
// line. Errors carry the offending row/column.

Matrix load_matrix(const std::string& path);
void save_matrix(const Matrix& m, const std::string& path);

ClassLabels load_labels(const std::string& path);
void save_labels(const ClassLabels& labels, const std::string& path);

// Attribute table for a known class count: exactly c rows.
Matrix load_attribute_table(const std::string& path, int num_classes);

// Per-class means of per-instance attribute rows (c x m).
Matrix class_attributes_from_instances(const Matrix& instance_attrs, const ClassLabels& labels);

// Semantic label matrix: row i is the attribute row of instance i's class,
// copied exactly.
Matrix expand_semantic_labels(const ClassLabels& labels, const Matrix& attrs);

// One-hot rows as a c x c attribute table, for class-label supervision.
Matrix one_hot_attributes(int num_classes);

ClassCenters compute_class_centers(const Matrix& x, const ClassLabels& labels);

// n x d matrix whose row i is the center of instance i's class.
Matrix expand_centers(const ClassCenters& centers, const ClassLabels& labels);

// Draws a zero-shot benchmark with disjoint seen/unseen class sets that
// share one feature-generating map.
//
// All randomness comes from one SplitMix64 stream seeded with `seed`, in
// this fixed order: seen attribute rows (row-major), unseen attribute rows,
// the m x k_info generator G (row-major), the informative column subset
// (partial Fisher-Yates), then per instance (seen split first) m attribute
// perturbations followed by d feature draws in column order. Noise draws are
// always consumed and scaled by their sd, so the stream layout does not
// depend on the noise settings.
//
// Instance i of a split belongs to class i mod c. Its informative columns
// are (class attributes + attr_noise_sd * perturbation) * G plus
// feature_noise_sd noise; the remaining columns are pure noise scaled to the
// expected informative-column sd sqrt(m * (1 + attr_noise_sd^2) +
// feature_noise_sd^2), so scale alone does not give the informative set
// away. The exposed attribute tables are the clean class rows.
SyntheticDataset generate_synthetic_zero_shot(const SynthParams& params, std::uint64_t seed);

// Writes seen_features.csv, seen_labels.txt, seen_attrs.csv,
// unseen_features.csv, unseen_labels.txt, unseen_attrs.csv and manifest.txt
// (key=value lines recording params, seed and the informative set) into dir,
// creating it if needed.
void save_synthetic_dataset(const SyntheticDataset& ds, const std::string& dir);

void save_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                   const std::string& path);
std::vector<std::pair<std::string, std::string>> load_manifest(const std::string& path);

Matrix select_columns(const Matrix& m, const std::vector<int>& cols);

// Keeps max(1, floor(ratio * class size)) instances per class, drawn without
// replacement from a stream seeded with `seed`; surviving rows stay in their
// original order. floored_classes counts classes saved by the floor.
struct SubsampleResult {
  Matrix x;
  ClassLabels labels;
  int floored_classes = 0;
};
SubsampleResult subsample_labeled_ratio(const Matrix& x, const ClassLabels& labels,
                                        double ratio, std::uint64_t seed);

// Per-column z-score with population sd; constant columns become all zero.
Matrix standardize_columns(const Matrix& m);

}  // namespace zerosel

#endif
