#ifndef ZEROSEL_EVAL_HPP
#define ZEROSEL_EVAL_HPP

#include <cstdint>
#include <vector>

#include "zerosel/types.hpp"

namespace zerosel {

struct EvalReport {
  int k_features = 0;
  double acc_mean = 0.0;
  double acc_sd = 0.0;
  double nmi_mean = 0.0;
  double nmi_sd = 0.0;
  int repeats = 0;
};

// Clusters the unseen split restricted to the selected columns with
// k = class count, once per repeat with seeds seed, seed+1, ..., and reports
// mean and sample standard deviation of accuracy and NMI against the true
// labels (sd is 0 for a single repeat). Repeats are independent, so they may
// run on worker threads; ZEROSEL_THREADS caps the worker count (unset, 0 or
// 1 means serial) and the results are identical either way.
EvalReport evaluate_selection(const Matrix& x_unseen, const ClassLabels& labels_unseen,
                              const std::vector<int>& selected, int repeats, std::uint64_t seed);

// evaluate_selection on each prefix length in counts of the given full
// ranking, same repeats and base seed for every count. Default counts are
// 5, 10, ..., 50.
std::vector<EvalReport> sweep_feature_counts(const Matrix& x_unseen,
                                             const ClassLabels& labels_unseen,
                                             const std::vector<int>& ranking,
                                             const std::vector<int>& counts, int repeats,
                                             std::uint64_t seed);

std::vector<int> default_sweep_counts();

}  // namespace zerosel

#endif
