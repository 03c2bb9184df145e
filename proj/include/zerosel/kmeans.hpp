#ifndef ZEROSEL_KMEANS_HPP
#define ZEROSEL_KMEANS_HPP

#include <cstdint>
#include <vector>

#include "zerosel/types.hpp"

namespace zerosel {

struct Clustering {
  std::vector<int> assignments;       // length n, values in [0, k)
  int k = 0;
  double inertia = 0.0;               // sum of squared distances to assigned centroids
  std::vector<double> inertia_trace;  // one entry per Lloyd assignment pass
};

// Lloyd's algorithm with weighted (distance-squared) seeding driven by the
// project RNG, so runs are reproducible from the seed alone. Iterates until
// the assignments stop changing or max_iter passes. A cluster left empty by
// a mean update is reseeded to the point currently farthest from its own
// centroid. Distances are plain squared Euclidean; assignment ties go to the
// lowest centroid index.
Clustering kmeans(const Matrix& x, int k, std::uint64_t seed, int max_iter = 100);

}  // namespace zerosel

#endif
