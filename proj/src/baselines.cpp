#include "zerosel/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "zerosel/errors.hpp"
#include "zerosel/rng.hpp"

namespace zerosel {

namespace {

void check_xy(const Matrix& x, const Matrix& y) {
  if (y.rows() != x.rows())
    throw std::invalid_argument("baseline fit: target row count must match X");
  if (x.rows() < 1 || x.cols() < 1 || y.cols() < 1)
    throw std::invalid_argument("baseline fit: empty input");
}

Vector row_norms_of(const Matrix& w) { return w.rowwise().norm(); }

Matrix solve_spd(const Matrix& lhs, const Matrix& rhs, const char* who) {
  Eigen::LDLT<Matrix> ldlt(lhs.selfadjointView<Eigen::Lower>());
  if (ldlt.info() != Eigen::Success)
    throw numeric_error(std::string(who) + ": LDLT factorization failed; rcond=" +
                        std::to_string(ldlt.rcond()));
  Matrix w = ldlt.solve(rhs);
  if (!w.allFinite())
    throw numeric_error(std::string(who) + ": solve produced non-finite values; rcond=" +
                        std::to_string(ldlt.rcond()));
  return w;
}

}  // namespace

std::vector<int> select_random(int d, int k, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("select_random: d must be >= 1");
  if (k < 1 || k > d) throw std::invalid_argument("select_random: k must be in [1, d]");
  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

RankedModel fit_ridge(const Matrix& x, const Matrix& y, double gamma) {
  check_xy(x, y);
  if (!(gamma > 0.0)) throw std::invalid_argument("fit_ridge: gamma must be > 0");
  const Eigen::Index d = x.cols();
  Matrix lhs = Matrix::Zero(d, d);
  lhs.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
  lhs.diagonal().array() += gamma;
  RankedModel m;
  m.weights = solve_spd(lhs, x.transpose() * y, "fit_ridge");
  m.row_norms = row_norms_of(m.weights);
  m.ranking = rank_descending(m.row_norms);
  return m;
}

double l21_smoothed_objective(const Matrix& x, const Matrix& y, const Matrix& w, double gamma,
                              double epsilon) {
  double pen = 0.0;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    const double r = w.row(i).norm();
    pen += (r >= epsilon) ? r : 0.5 * (r * r / epsilon + epsilon);
  }
  return (y - x * w).squaredNorm() + gamma * pen;
}

L21Result fit_l21(const Matrix& x, const Matrix& y, const L21Config& cfg) {
  check_xy(x, y);
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(std::string("fit_l21: ") + msg);
  };
  need(cfg.gamma > 0.0, "gamma must be > 0");
  need(cfg.max_iters >= 1, "max_iters must be >= 1");
  need(cfg.rel_tol > 0.0, "rel_tol must be > 0");
  need(cfg.epsilon > 0.0, "epsilon must be > 0");

  const Eigen::Index d = x.cols();
  Matrix gram = Matrix::Zero(d, d);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
  const Matrix xty = x.transpose() * y;

  Vector dweights = Vector::Constant(d, 0.5);  // D = I/2: first solve is a ridge
  L21Result res;
  double j_prev = 0.0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    Matrix lhs = gram;
    lhs.diagonal() += cfg.gamma * dweights;
    res.weights = solve_spd(lhs, xty, "fit_l21");
    res.row_norms = row_norms_of(res.weights);
    const double j = (y - x * res.weights).squaredNorm() + cfg.gamma * res.row_norms.sum();
    res.objective_trace.push_back(j);
    res.smoothed_trace.push_back(
        l21_smoothed_objective(x, y, res.weights, cfg.gamma, cfg.epsilon));
    res.iterations_run = it;
    if (it > 1 && (j_prev - j) / std::max(j_prev, 1e-30) < cfg.rel_tol) {
      res.converged = true;
      break;
    }
    j_prev = j;
    for (Eigen::Index i = 0; i < d; ++i)
      dweights[i] = 1.0 / (2.0 * std::max(res.row_norms[i], cfg.epsilon));
  }
  res.ranking = rank_descending(res.row_norms);
  return res;
}

}  // namespace zerosel
