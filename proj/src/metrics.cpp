#include "zerosel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace zerosel {

namespace {

std::vector<std::vector<long long>> contingency(const std::vector<int>& pred,
                                                const std::vector<int>& truth, int& r, int& c) {
  if (pred.empty()) throw std::invalid_argument("partition metric: empty input");
  if (pred.size() != truth.size())
    throw std::invalid_argument("partition metric: label vectors differ in length");
  r = 0;
  c = 0;
  for (int v : pred) {
    if (v < 0) throw std::invalid_argument("partition metric: negative label");
    r = std::max(r, v + 1);
  }
  for (int v : truth) {
    if (v < 0) throw std::invalid_argument("partition metric: negative label");
    c = std::max(c, v + 1);
  }
  std::vector<std::vector<long long>> table(static_cast<std::size_t>(r),
                                            std::vector<long long>(static_cast<std::size_t>(c), 0));
  for (std::size_t i = 0; i < pred.size(); ++i)
    table[static_cast<std::size_t>(pred[i])][static_cast<std::size_t>(truth[i])]++;
  return table;
}

// Kuhn-Munkres via shortest augmenting paths on the square cost matrix
// (minimization, O(n^3)); returns the minimum total cost.
double hungarian_min_cost(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> v(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<int> match(static_cast<std::size_t>(n + 1), 0);  // column -> row, 1-based
  std::vector<int> way(static_cast<std::size_t>(n + 1), 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n + 1), inf);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = match[static_cast<std::size_t>(j0)];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                           u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j)
    total += cost[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)]
                 [static_cast<std::size_t>(j - 1)];
  return total;
}

}  // namespace

double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  int r = 0, c = 0;
  const auto table = contingency(pred, truth, r, c);
  const int s = std::max(r, c);
  // negated counts turn the max-agreement matching into min cost
  std::vector<std::vector<double>> cost(static_cast<std::size_t>(s),
                                        std::vector<double>(static_cast<std::size_t>(s), 0.0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          -static_cast<double>(table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  const double matched = -hungarian_min_cost(cost);
  return matched / static_cast<double>(pred.size());
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
  int r = 0, c = 0;
  const auto table = contingency(pred, truth, r, c);
  const auto n = static_cast<double>(pred.size());

  std::vector<long long> a(static_cast<std::size_t>(r), 0);
  std::vector<long long> b(static_cast<std::size_t>(c), 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      a[static_cast<std::size_t>(i)] += table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(j)] += table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

  auto entropy = [n](const std::vector<long long>& counts) {
    double h = 0.0;
    for (long long v : counts) {
      if (v > 0) {
        const double p = static_cast<double>(v) / n;
        h -= p * std::log(p);
      }
    }
    return h;
  };
  const double hp = entropy(a);
  const double ht = entropy(b);
  if (hp == 0.0 && ht == 0.0) return 1.0;  // both single-cluster: identical partitions
  if (hp == 0.0 || ht == 0.0) return 0.0;

  double mi = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      const auto nij = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (nij > 0) {
        const double p = static_cast<double>(nij) / n;
        mi += p * std::log(static_cast<double>(nij) * n /
                           (static_cast<double>(a[static_cast<std::size_t>(i)]) *
                            static_cast<double>(b[static_cast<std::size_t>(j)])));
      }
    }
  return mi / std::sqrt(hp * ht);
}

}  // namespace zerosel
