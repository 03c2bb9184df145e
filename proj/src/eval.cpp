#include "zerosel/eval.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "zerosel/data.hpp"
#include "zerosel/kmeans.hpp"
#include "zerosel/metrics.hpp"

namespace zerosel {

namespace {

int thread_cap() {
  const char* env = std::getenv("ZEROSEL_THREADS");
  if (!env || !*env) return 1;
  const long v = std::strtol(env, nullptr, 10);
  return v >= 2 ? static_cast<int>(v) : 1;
}

// mean and sample sd accumulated in index order, so parallel runs aggregate
// identically to serial ones
void mean_sd(const std::vector<double>& xs, double& mean, double& sd) {
  double sum = 0.0;
  for (double v : xs) sum += v;
  mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) {
    sd = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

EvalReport evaluate_selection(const Matrix& x_unseen, const ClassLabels& labels_unseen,
                              const std::vector<int>& selected, int repeats, std::uint64_t seed) {
  if (x_unseen.rows() != labels_unseen.n())
    throw std::invalid_argument("evaluate_selection: row count must match labels");
  if (repeats < 1) throw std::invalid_argument("evaluate_selection: repeats must be >= 1");
  if (labels_unseen.num_classes > labels_unseen.n())
    throw std::invalid_argument("evaluate_selection: more classes than instances");

  const Matrix sub = select_columns(x_unseen, selected);
  const int k = labels_unseen.num_classes;

  std::vector<double> accs(static_cast<std::size_t>(repeats));
  std::vector<double> nmis(static_cast<std::size_t>(repeats));
  auto run_range = [&](int from, int to) {
    for (int r = from; r < to; ++r) {
      const Clustering cl = kmeans(sub, k, seed + static_cast<std::uint64_t>(r));
      accs[static_cast<std::size_t>(r)] = clustering_accuracy(cl.assignments, labels_unseen.values);
      nmis[static_cast<std::size_t>(r)] = nmi(cl.assignments, labels_unseen.values);
    }
  };

  const int workers = std::min(thread_cap(), repeats);
  if (workers <= 1) {
    run_range(0, repeats);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (repeats + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int from = w * chunk;
      const int to = std::min(repeats, from + chunk);
      if (from < to) pool.emplace_back(run_range, from, to);
    }
    for (auto& t : pool) t.join();
  }

  EvalReport rep;
  rep.k_features = static_cast<int>(selected.size());
  rep.repeats = repeats;
  mean_sd(accs, rep.acc_mean, rep.acc_sd);
  mean_sd(nmis, rep.nmi_mean, rep.nmi_sd);
  return rep;
}

std::vector<EvalReport> sweep_feature_counts(const Matrix& x_unseen,
                                             const ClassLabels& labels_unseen,
                                             const std::vector<int>& ranking,
                                             const std::vector<int>& counts, int repeats,
                                             std::uint64_t seed) {
  if (counts.empty()) throw std::invalid_argument("sweep_feature_counts: empty count list");
  std::vector<EvalReport> reports;
  reports.reserve(counts.size());
  for (int count : counts) {
    if (count < 1 || count > static_cast<int>(ranking.size()))
      throw std::invalid_argument("sweep_feature_counts: count " + std::to_string(count) +
                                  " out of range for ranking of length " +
                                  std::to_string(ranking.size()));
    const std::vector<int> prefix(ranking.begin(), ranking.begin() + count);
    reports.push_back(evaluate_selection(x_unseen, labels_unseen, prefix, repeats, seed));
  }
  return reports;
}

std::vector<int> default_sweep_counts() {
  std::vector<int> counts;
  for (int c = 5; c <= 50; c += 5) counts.push_back(c);
  return counts;
}

}  // namespace zerosel
