#ifndef ZEROSEL_METRICS_HPP
#define ZEROSEL_METRICS_HPP

#include <vector>

namespace zerosel {

// Agreement between two partitions given as dense 0-based label vectors.

// Fraction of instances matched under the best one-to-one relabeling of
// clusters onto classes: the contingency table is zero-padded square and the
// optimal assignment is found with the Kuhn-Munkres algorithm, so the score
// is the exact maximum, not a greedy approximation.
double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

// Mutual information normalized by sqrt(H(pred) * H(truth)), natural logs.
// Two single-cluster partitions agree perfectly (1.0); when exactly one side
// is single-cluster there is nothing to share (0.0).
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

}  // namespace zerosel

#endif
