#ifndef ZEROSEL_BASELINES_HPP
#define ZEROSEL_BASELINES_HPP

#include <cstdint>
#include <vector>

#include "zerosel/types.hpp"

namespace zerosel {

// Reference selectors the scored method is compared against: a seeded random
// draw, a ridge regression ranked by row norms, and a row-sparse L21
// regression fitted by iteratively reweighted least squares.

// k distinct indices from [0, d), uniform without replacement, fully
// determined by the seed.
std::vector<int> select_random(int d, int k, std::uint64_t seed);

struct RankedModel {
  Matrix weights;            // d x m
  Vector row_norms;          // length d
  std::vector<int> ranking;  // all d indices, best first; ties ascending
};

// W = argmin ||Y - X W||_F^2 + gamma ||W||_F^2, solved as the SPD system
// (X'X + gamma I) W = X'Y via LDLT.
RankedModel fit_ridge(const Matrix& x, const Matrix& y, double gamma);

struct L21Config {
  double gamma = 0.1;
  int max_iters = 100;
  double rel_tol = 1e-6;
  double epsilon = 1e-10;  // row-norm floor in the reweighting
};

struct L21Result {
  Matrix weights;
  Vector row_norms;
  std::vector<int> ranking;
  std::vector<double> objective_trace;  // J = ||Y - XW||_F^2 + gamma sum_i ||W(i,:)||_2
  std::vector<double> smoothed_trace;   // floored objective; non-increasing by construction
  int iterations_run = 0;
  bool converged = false;
};

// Minimizes ||Y - X W||_F^2 + gamma sum_i ||W(i,:)||_2 by IRLS: with D
// diagonal, D(i,i) = 1 / (2 max(||W(i,:)||_2, epsilon)) and D = I/2
// initially, it repeatedly solves (X'X + gamma D) W = X'Y. Stops on relative
// decrease of J below rel_tol or after max_iters solves. Each solve does not
// increase the floored objective ||Y - XW||_F^2 + gamma sum_i h(||W(i,:)||_2)
// with h(r) = r for r >= epsilon and (r^2/epsilon + epsilon)/2 below it.
L21Result fit_l21(const Matrix& x, const Matrix& y, const L21Config& cfg);

// The floored penalty above; exposed so tests can monitor the exact
// quantity the iteration descends.
double l21_smoothed_objective(const Matrix& x, const Matrix& y, const Matrix& w, double gamma,
                              double epsilon);

}  // namespace zerosel

#endif
