#include "zerosel/kmeans.hpp"

#include <limits>
#include <stdexcept>

#include "zerosel/rng.hpp"

namespace zerosel {

namespace {

Matrix seed_centers(const Matrix& x, int k, Rng& rng) {
  const Eigen::Index n = x.rows();
  Matrix centers(k, x.cols());
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n))));
  Vector d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick;
    if (total > 0.0) {
      // inverse-CDF draw over the current distance-squared weights
      const double r = rng.next_double() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > r) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = x.row(pick);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

}  // namespace

Clustering kmeans(const Matrix& x, int k, std::uint64_t seed, int max_iter) {
  const Eigen::Index n = x.rows();
  if (n < 1) throw std::invalid_argument("kmeans: empty input");
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: k must be in [1, n]");
  if (max_iter < 1) throw std::invalid_argument("kmeans: max_iter must be >= 1");

  Rng rng(seed);
  Matrix centers = seed_centers(x, k, rng);

  Clustering cl;
  cl.k = k;
  cl.assignments.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> counts(static_cast<std::size_t>(k), 0);

  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (cl.assignments[static_cast<std::size_t>(i)] != best) {
        cl.assignments[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
      inertia += best_d;
    }
    cl.inertia_trace.push_back(inertia);
    cl.inertia = inertia;
    if (!changed) break;

    centers.setZero();
    counts.assign(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      centers.row(cl.assignments[static_cast<std::size_t>(i)]) += x.row(i);
      counts[static_cast<std::size_t>(cl.assignments[static_cast<std::size_t>(i)])]++;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0)
        centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }

    // reseed each empty cluster to the point farthest from its own centroid;
    // a point claimed by one repair is not reused for the next
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Eigen::Index far = -1;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (taken[static_cast<std::size_t>(i)]) continue;
        const int a = cl.assignments[static_cast<std::size_t>(i)];
        const double d = (x.row(i) - centers.row(a)).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far >= 0) {
        centers.row(c) = x.row(far);
        taken[static_cast<std::size_t>(far)] = 1;
      }
    }
  }
  return cl;
}

}  // namespace zerosel
