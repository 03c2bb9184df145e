#include "zerosel/semfs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "zerosel/data.hpp"
#include "zerosel/errors.hpp"

namespace zerosel::semfs {

namespace {

void check_dims(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Vector& s) {
  if (xbar.rows() != x.rows() || xbar.cols() != x.cols())
    throw std::invalid_argument("semfs: X and Xbar dimensions differ");
  if (ys.rows() != x.rows())
    throw std::invalid_argument("semfs: Ys row count must match X");
  if (s.size() != x.cols())
    throw std::invalid_argument("semfs: s length must match feature count");
}

void check_w(const Matrix& x, const Matrix& ys, const Matrix& w) {
  if (w.rows() != x.cols() || w.cols() != ys.cols())
    throw std::invalid_argument("semfs: W must be d x m");
}

// non-throwing evaluation used inside the line search, where an overlong
// trial step may legitimately overflow
double s_objective_raw(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                       const Vector& s, double alpha) {
  const Matrix sw = s.asDiagonal() * w;
  double v = (ys - x * sw).squaredNorm();
  if (alpha != 0.0) v += alpha * (ys - xbar * sw).squaredNorm();
  return v;
}

}  // namespace

void validate_config(const SemfsConfig& cfg) {
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(std::string("semfs config: ") + msg);
  };
  need(cfg.alpha >= 0.0, "alpha must be >= 0");
  need(cfg.gamma > 0.0, "gamma must be > 0");
  need(cfg.max_iters >= 0, "max_iters must be >= 0");
  need(cfg.rel_tol > 0.0, "rel_tol must be > 0");
  need(cfg.pgd_max_steps >= 0, "pgd_max_steps must be >= 0");
  need(cfg.pgd_init_step > 0.0, "pgd_init_step must be > 0");
  need(cfg.armijo_c > 0.0 && cfg.armijo_c < 1.0, "armijo_c must be in (0, 1)");
  need(cfg.backtrack_factor > 0.0 && cfg.backtrack_factor < 1.0,
       "backtrack_factor must be in (0, 1)");
}

double s_objective(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                   const Vector& s, double alpha) {
  check_dims(x, xbar, ys, s);
  check_w(x, ys, w);
  const double v = s_objective_raw(x, xbar, ys, w, s, alpha);
  if (!std::isfinite(v)) throw numeric_error("semfs: objective is not finite");
  return v;
}

double objective(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                 const Vector& s, double alpha, double gamma) {
  check_dims(x, xbar, ys, s);
  check_w(x, ys, w);
  const double v = s_objective_raw(x, xbar, ys, w, s, alpha) + gamma * w.squaredNorm();
  if (!std::isfinite(v)) throw numeric_error("semfs: objective is not finite");
  return v;
}

Matrix update_w(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Vector& s,
                double alpha, double gamma) {
  check_dims(x, xbar, ys, s);
  if (!(gamma > 0.0)) throw std::invalid_argument("semfs: gamma must be > 0");

  const Eigen::Index d = x.cols();
  const Matrix xs = x * s.asDiagonal();
  Matrix lhs = Matrix::Zero(d, d);
  lhs.selfadjointView<Eigen::Lower>().rankUpdate(xs.transpose());
  Matrix rhs = xs.transpose() * ys;
  if (alpha != 0.0) {
    const Matrix xbs = xbar * s.asDiagonal();
    Matrix center = Matrix::Zero(d, d);
    center.selfadjointView<Eigen::Lower>().rankUpdate(xbs.transpose());
    lhs += alpha * center;
    rhs += alpha * (xbs.transpose() * ys);
  }
  lhs.diagonal().array() += gamma;

  Eigen::LDLT<Matrix> ldlt(lhs.selfadjointView<Eigen::Lower>());
  if (ldlt.info() != Eigen::Success) {
    throw numeric_error("semfs: LDLT factorization failed; rcond=" +
                        std::to_string(ldlt.rcond()) +
                        " (gamma too small for the conditioning of the data)");
  }
  Matrix w = ldlt.solve(rhs);
  if (!w.allFinite()) {
    throw numeric_error("semfs: W solve produced non-finite values; rcond=" +
                        std::to_string(ldlt.rcond()) +
                        " (gamma too small for the conditioning of the data)");
  }
  return w;
}

Matrix w_gradient(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                  const Vector& s, double alpha, double gamma) {
  check_dims(x, xbar, ys, s);
  check_w(x, ys, w);
  const Matrix xs = x * s.asDiagonal();
  Matrix g = 2.0 * (xs.transpose() * (xs * w - ys));
  if (alpha != 0.0) {
    const Matrix xbs = xbar * s.asDiagonal();
    g += 2.0 * alpha * (xbs.transpose() * (xbs * w - ys));
  }
  g += 2.0 * gamma * w;
  return g;
}

Vector grad_s(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
              const Vector& s, double alpha) {
  check_dims(x, xbar, ys, s);
  check_w(x, ys, w);
  // diag(A'B) evaluated as columnwise dots; every product stays O(n d m)
  const Matrix ysw = ys * w.transpose();                      // n x d
  const Matrix xsww = (x * (s.asDiagonal() * w)) * w.transpose();  // n x d
  Vector g = 2.0 * (x.cwiseProduct(xsww - ysw)).colwise().sum().transpose();
  if (alpha != 0.0) {
    const Matrix bxsww = (xbar * (s.asDiagonal() * w)) * w.transpose();
    g += 2.0 * alpha * (xbar.cwiseProduct(bxsww - ysw)).colwise().sum().transpose();
  }
  return g;
}

Vector pgd_update_s(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                    const Vector& s, double alpha, const SemfsConfig& cfg, int* steps_accepted) {
  validate_config(cfg);
  check_dims(x, xbar, ys, s);
  check_w(x, ys, w);

  Vector cur = s;
  double j_cur = s_objective_raw(x, xbar, ys, w, cur, alpha);
  int accepted = 0;
  for (int step = 0; step < cfg.pgd_max_steps; ++step) {
    const Vector g = grad_s(x, xbar, ys, w, cur, alpha);
    const double g2 = g.squaredNorm();
    if (g2 == 0.0) break;  // stationary: nothing to move

    double t = cfg.pgd_init_step;
    bool ok = false;
    Vector cand;
    double j_cand = 0.0;
    while (t >= 1e-16) {
      cand = (cur - t * g).cwiseMax(0.0);
      // a trial identical to the current point stays identical for every
      // smaller step (clamped coordinates remain clamped), so stop here
      if ((cand.array() == cur.array()).all()) break;
      j_cand = s_objective_raw(x, xbar, ys, w, cand, alpha);
      // comparison is false for a non-finite trial value, which backtracks
      if (j_cand <= j_cur - cfg.armijo_c * t * g2) {
        ok = true;
        break;
      }
      t *= cfg.backtrack_factor;
    }
    if (!ok) break;  // step underflowed: keep s unchanged from here on
    cur = cand;
    j_cur = j_cand;
    ++accepted;
  }
  if (steps_accepted) *steps_accepted = accepted;
  return cur;
}

SelectionResult fit(const Matrix& x, const ClassLabels& labels, const Matrix& attrs,
                    const SemfsConfig& cfg) {
  validate_config(cfg);
  if (x.rows() != labels.n())
    throw std::invalid_argument("semfs fit: feature row count must match labels");

  const Matrix ys = expand_semantic_labels(labels, attrs);
  const Matrix xbar = expand_centers(compute_class_centers(x, labels), labels);
  const Eigen::Index d = x.cols();

  SelectionResult res;
  res.scores = (cfg.s_init == SInit::Ones)
                   ? Vector::Ones(d)
                   : Vector::Constant(d, 1.0 / static_cast<double>(d));
  res.weights = Matrix::Zero(d, ys.cols());
  res.objective_trace.push_back(
      objective(x, xbar, ys, res.weights, res.scores, cfg.alpha, cfg.gamma));

  for (int it = 1; it <= cfg.max_iters; ++it) {
    res.weights = update_w(x, xbar, ys, res.scores, cfg.alpha, cfg.gamma);
    int accepted = 0;
    res.scores = pgd_update_s(x, xbar, ys, res.weights, res.scores, cfg.alpha, cfg, &accepted);
    const double j = objective(x, xbar, ys, res.weights, res.scores, cfg.alpha, cfg.gamma);
    const double j_prev = res.objective_trace.back();
    res.objective_trace.push_back(j);
    res.pgd_steps.push_back(accepted);
    res.iterations_run = it;
    if ((j_prev - j) / std::max(j_prev, 1e-30) < cfg.rel_tol) {
      res.converged = true;
      break;
    }
  }
  res.ranking = rank_descending(res.scores);
  return res;
}

std::vector<int> rank_features(const Vector& scores, int k) {
  if (k < 0 || k > scores.size())
    throw std::invalid_argument("rank_features: k must be in [0, d]");
  auto full = rank_descending(scores);
  full.resize(static_cast<std::size_t>(k));
  return full;
}

}  // namespace zerosel::semfs
