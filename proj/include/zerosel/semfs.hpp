#ifndef ZEROSEL_SEMFS_HPP
#define ZEROSEL_SEMFS_HPP

#include <vector>

#include "zerosel/types.hpp"

namespace zerosel::semfs {

// Attribute-supervised feature scoring with a center-characteristic loss:
//
//   J(W, s) = ||Ys - X diag(s) W||_F^2 + alpha ||Ys - Xbar diag(s) W||_F^2
//             + gamma ||W||_F^2,   s >= 0
//
// where X holds instances, Xbar repeats each instance's class center and Ys
// repeats each instance's class attribute row. Minimized by alternating an
// exact W solve with projected gradient steps on the nonnegative scores s.

enum class SInit {
  Ones,     // every score starts at 1
  Uniform,  // every score starts at 1/d
};

struct SemfsConfig {
  double alpha = 1.0;
  double gamma = 0.1;
  int max_iters = 100;
  double rel_tol = 1e-6;
  int pgd_max_steps = 10;
  double pgd_init_step = 1.0;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  SInit s_init = SInit::Ones;
};

void validate_config(const SemfsConfig& cfg);

struct SelectionResult {
  Vector scores;                       // final s, length d, entries >= 0
  Matrix weights;                      // final W, d x m
  std::vector<int> ranking;            // all d indices, best first
  std::vector<double> objective_trace; // initial value plus one entry per iteration
  std::vector<int> pgd_steps;          // accepted PGD steps per iteration
  int iterations_run = 0;
  bool converged = false;
};

// Full objective J(W, s). Throws numeric_error when the result is not
// finite (numeric blow-up in the inputs).
double objective(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                 const Vector& s, double alpha, double gamma);

// The two data-fit terms only (the piece of J that depends on s).
double s_objective(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                   const Vector& s, double alpha);

// Exact W minimizer for fixed s: solves the SPD system
//   [(X diag(s))'(X diag(s)) + alpha (Xbar diag(s))'(Xbar diag(s)) + gamma I] W
//     = [(X diag(s))' + alpha (Xbar diag(s))'] Ys
// via LDLT; never forms an inverse. gamma > 0 keeps the system positive
// definite. Throws numeric_error when factorization fails or the solution is
// not finite, reporting a conditioning diagnostic.
Matrix update_w(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Vector& s,
                double alpha, double gamma);

// Gradient of J with respect to W at (w, s); zero (up to solver tolerance)
// right after update_w.
Matrix w_gradient(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                  const Vector& s, double alpha, double gamma);

// Gradient of s_objective with respect to s:
//   [-2 X'Ys W' + 2 X'X diag(s) W W' - 2 alpha Xbar'Ys W'
//    + 2 alpha Xbar'Xbar diag(s) W W']_diag
Vector grad_s(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
              const Vector& s, double alpha);

// Up to cfg.pgd_max_steps projected gradient steps on s with backtracking:
// each step starts at cfg.pgd_init_step and halves by cfg.backtrack_factor
// until the sufficient-decrease test at the projected point
//   J_s(max(0, s - t g)) <= J_s(s) - armijo_c * t * ||g||^2
// passes, or t underflows below 1e-16 (then s is kept and the sweep stops).
// J_s never increases. steps_accepted, when given, receives the number of
// accepted steps.
Vector pgd_update_s(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                    const Vector& s, double alpha, const SemfsConfig& cfg,
                    int* steps_accepted = nullptr);

// Alternates update_w and pgd_update_s from s = s_init (W enters through the
// first W solve; the trace starts at the objective with W = 0). Stops when
// the relative objective decrease (J_prev - J) / max(J_prev, 1e-30) drops
// below cfg.rel_tol (converged) or after cfg.max_iters iterations.
SelectionResult fit(const Matrix& x, const ClassLabels& labels, const Matrix& attrs,
                    const SemfsConfig& cfg);

// Top-k indices by descending score; equal scores break toward the smaller
// index.
std::vector<int> rank_features(const Vector& scores, int k);

}  // namespace zerosel::semfs

#endif
