#include "zerosel/semfs.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "zerosel/data.hpp"
#include "zerosel/errors.hpp"
#include "zerosel/rng.hpp"

using namespace zerosel;
using namespace zerosel::semfs;

namespace {

Matrix random_matrix(Rng& rng, int r, int c) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.next_normal();
  return m;
}

// independent oracle: the objective evaluated entry by entry with plain
// loops, no matrix algebra
double objective_loops(const Matrix& x, const Matrix& xbar, const Matrix& ys, const Matrix& w,
                       const Vector& s, double alpha, double gamma) {
  const int n = static_cast<int>(x.rows());
  const int d = static_cast<int>(x.cols());
  const int m = static_cast<int>(ys.cols());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      double fit = 0.0, cfit = 0.0;
      for (int f = 0; f < d; ++f) {
        fit += x(i, f) * s(f) * w(f, j);
        cfit += xbar(i, f) * s(f) * w(f, j);
      }
      const double r1 = ys(i, j) - fit;
      const double r2 = ys(i, j) - cfit;
      total += r1 * r1 + alpha * r2 * r2;
    }
  }
  for (int f = 0; f < d; ++f)
    for (int j = 0; j < m; ++j) total += gamma * w(f, j) * w(f, j);
  return total;
}

struct Instance {
  Matrix x, xbar, ys;
  ClassLabels labels;
  Matrix attrs;
};

Instance random_instance(Rng& rng, int n, int d, int m, int c) {
  Instance inst;
  inst.x = random_matrix(rng, n, d);
  std::vector<int> lv;
  for (int i = 0; i < n; ++i) lv.push_back(i % c);
  inst.labels = make_class_labels(lv);
  inst.attrs = random_matrix(rng, c, m);
  inst.ys = expand_semantic_labels(inst.labels, inst.attrs);
  inst.xbar = expand_centers(compute_class_centers(inst.x, inst.labels), inst.labels);
  return inst;
}

}  // namespace

TEST_CASE("objective with W = 0 is the pure target mass") {
  Rng rng(1);
  const auto inst = random_instance(rng, 8, 4, 3, 2);
  const Matrix w0 = Matrix::Zero(4, 3);
  const Vector s = Vector::Ones(4);
  const double j = objective(inst.x, inst.xbar, inst.ys, w0, s, 0.0, 0.5);
  CHECK(j == doctest::Approx(inst.ys.squaredNorm()).epsilon(1e-14));
  const double j2 = objective(inst.x, inst.xbar, inst.ys, w0, s, 1.0, 0.5);
  CHECK(j2 == doctest::Approx(2.0 * inst.ys.squaredNorm()).epsilon(1e-14));
}

TEST_CASE("objective matches the hand-worked scalar case") {
  Matrix x(1, 1), xbar(1, 1), ys(1, 1), w(1, 1);
  x << 2;
  xbar << 2;
  ys << 1;
  w << 0.5;
  Vector s(1);
  s << 1;
  CHECK(objective(x, xbar, ys, w, s, 1.0, 1.0) == 0.25);
}

TEST_CASE("objective agrees with the scalar-loop oracle on random instances") {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = random_instance(rng, 12, 6, 4, 3);
    const Matrix w = random_matrix(rng, 6, 4);
    Vector s = random_matrix(rng, 6, 1).cwiseAbs();
    const double got = objective(inst.x, inst.xbar, inst.ys, w, s, 0.7, 0.3);
    const double want = objective_loops(inst.x, inst.xbar, inst.ys, w, s, 0.7, 0.3);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("objective splits into the s-dependent part plus the gamma term") {
  Rng rng(3);
  const auto inst = random_instance(rng, 10, 5, 3, 2);
  const Matrix w = random_matrix(rng, 5, 3);
  const Vector s = Vector::Ones(5);
  const double full = objective(inst.x, inst.xbar, inst.ys, w, s, 1.0, 0.1);
  const double part = s_objective(inst.x, inst.xbar, inst.ys, w, s, 1.0);
  CHECK(full == doctest::Approx(part + 0.1 * w.squaredNorm()).epsilon(1e-14));
}

TEST_CASE("objective rejects dimension mismatches") {
  Matrix x = Matrix::Zero(3, 2), ys = Matrix::Zero(3, 1), w = Matrix::Zero(2, 1);
  Vector s = Vector::Ones(2);
  CHECK_THROWS_AS(objective(x, Matrix::Zero(2, 2), ys, w, s, 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(objective(x, x, Matrix::Zero(2, 1), w, s, 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(objective(x, x, ys, Matrix::Zero(3, 1), s, 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(objective(x, x, ys, w, Vector::Ones(3), 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("update_w returns zero for a zero target") {
  Rng rng(4);
  const auto inst = random_instance(rng, 9, 4, 2, 3);
  const Vector s = Vector::Ones(4);
  const Matrix w = update_w(inst.x, inst.xbar, Matrix::Zero(9, 2), s, 1.0, 0.5);
  CHECK(w.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("update_w matches the hand-worked scalar case") {
  Matrix x(1, 1), xbar(1, 1), ys(1, 1);
  x << 2;
  xbar << 2;
  ys << 1;
  Vector s(1);
  s << 1;
  const Matrix w = update_w(x, xbar, ys, s, 0.0, 1.0);
  CHECK(w(0, 0) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("update_w leaves a vanishing W-gradient") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = random_instance(rng, 15, 7, 4, 3);
    Vector s = random_matrix(rng, 7, 1).cwiseAbs();
    const Matrix w = update_w(inst.x, inst.xbar, inst.ys, s, 1.0, 0.1);
    const Matrix g = w_gradient(inst.x, inst.xbar, inst.ys, w, s, 1.0, 0.1);
    CHECK(g.norm() <= 1e-6 * (1.0 + w.norm()));
  }
}

TEST_CASE("w_gradient agrees with central finite differences") {
  Rng rng(6);
  const auto inst = random_instance(rng, 8, 4, 3, 2);
  const Matrix w = random_matrix(rng, 4, 3);
  Vector s = random_matrix(rng, 4, 1).cwiseAbs();
  const Matrix g = w_gradient(inst.x, inst.xbar, inst.ys, w, s, 0.8, 0.2);
  const double h = 1e-6;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) {
      Matrix wp = w, wm = w;
      wp(i, j) += h;
      wm(i, j) -= h;
      const double fd = (objective(inst.x, inst.xbar, inst.ys, wp, s, 0.8, 0.2) -
                         objective(inst.x, inst.xbar, inst.ys, wm, s, 0.8, 0.2)) /
                        (2.0 * h);
      CHECK(g(i, j) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("update_w solves the large-gamma limit toward zero") {
  Rng rng(7);
  const auto inst = random_instance(rng, 10, 5, 3, 2);
  const Vector s = Vector::Ones(5);
  const Matrix w = update_w(inst.x, inst.xbar, inst.ys, s, 1.0, 1e9);
  CHECK(w.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("grad_s vanishes when W is zero") {
  Rng rng(8);
  const auto inst = random_instance(rng, 8, 4, 3, 2);
  const Vector s = Vector::Ones(4);
  const Vector g = grad_s(inst.x, inst.xbar, inst.ys, Matrix::Zero(4, 3), s, 1.0);
  CHECK(g.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grad_s matches the hand-worked scalar case") {
  Matrix x(1, 1), xbar(1, 1), ys(1, 1), w(1, 1);
  x << 1;
  xbar << 1;
  ys << 2;
  w << 1;
  Vector s(1);
  s << 0;
  const Vector g = grad_s(x, xbar, ys, w, s, 0.0);
  CHECK(g(0) == -4.0);
}

TEST_CASE("grad_s agrees with central finite differences of the s-objective") {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = random_instance(rng, 10, 6, 4, 2);
    const Matrix w = random_matrix(rng, 6, 4);
    Vector s = random_matrix(rng, 6, 1).cwiseAbs();
    const Vector g = grad_s(inst.x, inst.xbar, inst.ys, w, s, 1.0);
    for (int f = 0; f < 6; ++f) {
      const double h = 1e-6 * std::max(1.0, std::abs(s(f)));
      Vector sp = s, sm = s;
      sp(f) += h;
      sm(f) -= h;
      const double fd = (s_objective(inst.x, inst.xbar, inst.ys, w, sp, 1.0) -
                         s_objective(inst.x, inst.xbar, inst.ys, w, sm, 1.0)) /
                        (2.0 * h);
      CHECK(std::abs(g(f) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("pgd_update_s keeps a stationary point unchanged") {
  Rng rng(10);
  const auto inst = random_instance(rng, 8, 4, 3, 2);
  const Vector s = Vector::Ones(4);
  SemfsConfig cfg;
  int accepted = -1;
  const Vector out =
      pgd_update_s(inst.x, inst.xbar, inst.ys, Matrix::Zero(4, 3), s, 1.0, cfg, &accepted);
  CHECK((out - s).cwiseAbs().maxCoeff() == 0.0);
  CHECK(accepted == 0);
}

TEST_CASE("pgd_update_s clamps a step through zero onto the boundary") {
  // J_s(s) = s^2, gradient 1 at s = 0.5; the unit step lands at -0.5 and the
  // projection clamps to 0, which Armijo accepts
  Matrix x(1, 1), xbar(1, 1), ys(1, 1), w(1, 1);
  x << 1;
  xbar << 1;
  ys << 0;
  w << 1;
  Vector s(1);
  s << 0.5;
  SemfsConfig cfg;
  cfg.alpha = 0.0;
  int accepted = -1;
  const Vector out = pgd_update_s(x, xbar, ys, w, s, 0.0, cfg, &accepted);
  CHECK(out(0) == 0.0);
  CHECK(accepted == 1);
}

TEST_CASE("pgd_update_s accepts no step when pinned at the boundary") {
  // J_s(s) = (-2 - s)^2 has positive gradient at s = 0; every projected
  // trial returns to s itself, so the search underflows and keeps s
  Matrix x(1, 1), xbar(1, 1), ys(1, 1), w(1, 1);
  x << 1;
  xbar << 1;
  ys << -2;
  w << 1;
  Vector s(1);
  s << 0;
  SemfsConfig cfg;
  cfg.alpha = 0.0;
  int accepted = -1;
  const Vector out = pgd_update_s(x, xbar, ys, w, s, 0.0, cfg, &accepted);
  CHECK(out(0) == 0.0);
  CHECK(accepted == 0);
}

TEST_CASE("pgd_update_s keeps s nonnegative and never raises the s-objective") {
  Rng rng(11);
  SemfsConfig cfg;
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance(rng, 10, 5, 3, 2);
    const Matrix w = random_matrix(rng, 5, 3);
    Vector s = random_matrix(rng, 5, 1).cwiseAbs();
    const double before = s_objective(inst.x, inst.xbar, inst.ys, w, s, cfg.alpha);
    const Vector out = pgd_update_s(inst.x, inst.xbar, inst.ys, w, s, cfg.alpha, cfg);
    CHECK(out.minCoeff() >= 0.0);
    const double after = s_objective(inst.x, inst.xbar, inst.ys, w, out, cfg.alpha);
    CHECK(after <= before + 1e-9);
  }
}

TEST_CASE("fit with max_iters = 0 returns the initial state") {
  Rng rng(12);
  const auto inst = random_instance(rng, 10, 5, 3, 2);
  SemfsConfig cfg;
  cfg.max_iters = 0;
  const auto res = semfs::fit(inst.x, inst.labels, inst.attrs, cfg);
  CHECK(res.iterations_run == 0);
  CHECK_FALSE(res.converged);
  REQUIRE(res.objective_trace.size() == 1);
  CHECK((res.scores - Vector::Ones(5)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(res.ranking == std::vector<int>{0, 1, 2, 3, 4});  // equal scores keep index order
  CHECK(res.objective_trace[0] ==
        doctest::Approx((1.0 + cfg.alpha) * inst.ys.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("fit descends monotonically and reports a consistent trace") {
  Rng rng(13);
  SemfsConfig cfg;
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance(rng, 30, 12, 5, 4);
    const auto res = semfs::fit(inst.x, inst.labels, inst.attrs, cfg);
    REQUIRE(res.objective_trace.size() == static_cast<std::size_t>(res.iterations_run) + 1);
    REQUIRE(res.pgd_steps.size() == static_cast<std::size_t>(res.iterations_run));
    for (std::size_t t = 1; t < res.objective_trace.size(); ++t)
      CHECK(res.objective_trace[t] <= res.objective_trace[t - 1] + 1e-9);
    CHECK(res.scores.minCoeff() >= 0.0);
    CHECK(res.ranking.size() == 12);
  }
}

TEST_CASE("fit is exactly the alternation of the public single-step operations") {
  Rng rng(14);
  const auto inst = random_instance(rng, 25, 8, 4, 3);
  SemfsConfig cfg;
  cfg.max_iters = 7;
  cfg.rel_tol = 1e-300;  // force all 7 iterations
  const auto res = semfs::fit(inst.x, inst.labels, inst.attrs, cfg);

  Vector s = Vector::Ones(8);
  Matrix w = Matrix::Zero(8, 4);
  for (int it = 0; it < 7; ++it) {
    w = update_w(inst.x, inst.xbar, inst.ys, s, cfg.alpha, cfg.gamma);
    s = pgd_update_s(inst.x, inst.xbar, inst.ys, w, s, cfg.alpha, cfg);
  }
  CHECK((res.weights - w).cwiseAbs().maxCoeff() == 0.0);
  CHECK((res.scores - s).cwiseAbs().maxCoeff() == 0.0);
  CHECK(res.iterations_run == 7);
}

TEST_CASE("fit under uniform initialization starts every score at 1/d") {
  Rng rng(15);
  const auto inst = random_instance(rng, 10, 5, 3, 2);
  SemfsConfig cfg;
  cfg.max_iters = 0;
  cfg.s_init = SInit::Uniform;
  const auto res = semfs::fit(inst.x, inst.labels, inst.attrs, cfg);
  CHECK((res.scores - Vector::Constant(5, 0.2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("center-term formulas agree between expanded and grouped evaluation") {
  Rng rng(16);
  const auto inst = random_instance(rng, 24, 6, 4, 3);
  const ClassCenters cc = compute_class_centers(inst.x, inst.labels);
  const Matrix w = random_matrix(rng, 6, 4);
  Vector s = random_matrix(rng, 6, 1).cwiseAbs();

  // grouped oracle: weight each class center and attribute row by the class
  // size instead of expanding to n rows
  double grouped = 0.0;
  for (int j = 0; j < inst.labels.num_classes; ++j) {
    const Eigen::RowVectorXd resid =
        inst.attrs.row(j) - (cc.centers.row(j) * s.asDiagonal()) * w;
    grouped += cc.counts[static_cast<std::size_t>(j)] * resid.squaredNorm();
  }
  const double expanded = s_objective(inst.x, inst.xbar, inst.ys, w, s, 1.0) -
                          s_objective(inst.x, inst.xbar, inst.ys, w, s, 0.0);
  CHECK(expanded == doctest::Approx(grouped).epsilon(1e-12));

  // same equivalence inside the W solve: build the center Gram grouped
  const Matrix cs = cc.centers * s.asDiagonal();
  Vector counts(inst.labels.num_classes);
  for (int j = 0; j < inst.labels.num_classes; ++j)
    counts(j) = static_cast<double>(cc.counts[static_cast<std::size_t>(j)]);
  const Matrix grouped_gram = cs.transpose() * counts.asDiagonal() * cs;
  const Matrix xbs = inst.xbar * s.asDiagonal();
  const Matrix expanded_gram = xbs.transpose() * xbs;
  CHECK((grouped_gram - expanded_gram).cwiseAbs().maxCoeff() <=
        1e-12 * (1.0 + expanded_gram.cwiseAbs().maxCoeff()));
}

TEST_CASE("alpha = 0 reproduces a center-free alternation") {
  Rng rng(17);
  const auto inst = random_instance(rng, 20, 6, 3, 2);
  SemfsConfig cfg;
  cfg.alpha = 0.0;
  cfg.max_iters = 5;
  cfg.rel_tol = 1e-300;
  const auto res = semfs::fit(inst.x, inst.labels, inst.attrs, cfg);

  // center-free reference: the same schedule written without Xbar anywhere
  Vector s = Vector::Ones(6);
  Matrix w;
  for (int it = 0; it < 5; ++it) {
    const Matrix xs = inst.x * s.asDiagonal();
    Matrix lhs = xs.transpose() * xs;
    lhs.diagonal().array() += cfg.gamma;
    w = lhs.ldlt().solve(xs.transpose() * inst.ys);
    double j_cur = (inst.ys - inst.x * (s.asDiagonal() * w)).squaredNorm();
    for (int step = 0; step < cfg.pgd_max_steps; ++step) {
      const Matrix ysw = inst.ys * w.transpose();
      const Matrix xsww = (inst.x * (s.asDiagonal() * w)) * w.transpose();
      const Vector g = 2.0 * (inst.x.cwiseProduct(xsww - ysw)).colwise().sum().transpose();
      const double g2 = g.squaredNorm();
      if (g2 == 0.0) break;
      double t = cfg.pgd_init_step;
      bool ok = false;
      Vector cand;
      double j_cand = 0.0;
      while (t >= 1e-16) {
        cand = (s - t * g).cwiseMax(0.0);
        j_cand = (inst.ys - inst.x * (cand.asDiagonal() * w)).squaredNorm();
        if (j_cand <= j_cur - cfg.armijo_c * t * g2) {
          ok = true;
          break;
        }
        t *= cfg.backtrack_factor;
      }
      if (!ok) break;
      s = cand;
      j_cur = j_cand;
    }
  }
  CHECK((res.scores - s).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + s.cwiseAbs().maxCoeff()));
  CHECK((res.weights - w).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + w.cwiseAbs().maxCoeff()));
}

TEST_CASE("fit is deterministic") {
  Rng rng(18);
  const auto inst = random_instance(rng, 20, 7, 3, 2);
  SemfsConfig cfg;
  const auto a = semfs::fit(inst.x, inst.labels, inst.attrs, cfg);
  const auto b = semfs::fit(inst.x, inst.labels, inst.attrs, cfg);
  CHECK((a.scores - b.scores).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.ranking == b.ranking);
  CHECK(a.objective_trace == b.objective_trace);
}

TEST_CASE("rank_features orders by score with index ties") {
  Vector s(4);
  s << 0.2, 0.5, 0.5, 0.1;
  CHECK(rank_features(s, 4) == std::vector<int>{1, 2, 0, 3});
  CHECK(rank_features(s, 2) == std::vector<int>{1, 2});
  CHECK(rank_features(s, 0).empty());
  CHECK_THROWS_AS(rank_features(s, 5), std::invalid_argument);
  CHECK_THROWS_AS(rank_features(s, -1), std::invalid_argument);
}

TEST_CASE("config validation rejects out-of-range values") {
  SemfsConfig cfg;
  cfg.gamma = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = SemfsConfig{};
  cfg.alpha = -1.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = SemfsConfig{};
  cfg.backtrack_factor = 1.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg = SemfsConfig{};
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}
