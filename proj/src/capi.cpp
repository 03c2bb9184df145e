#include "zerosel.h"

#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zerosel/baselines.hpp"
#include "zerosel/data.hpp"
#include "zerosel/errors.hpp"
#include "zerosel/eval.hpp"
#include "zerosel/format.hpp"
#include "zerosel/kmeans.hpp"
#include "zerosel/metrics.hpp"
#include "zerosel/report.hpp"
#include "zerosel/semfs.hpp"
#include "zerosel/types.hpp"

struct zsl_matrix {
  zerosel::Matrix m;
};

struct zsl_labels {
  zerosel::ClassLabels l;
};

struct zsl_selection {
  zerosel::Vector scores;
  std::vector<int> ranking;
  std::vector<double> trace;
  std::vector<int> pgd_steps;
  bool has_pgd_steps = false;
  int iterations = 0;
  bool converged = false;
};

struct zsl_dataset {
  zerosel::SyntheticDataset d;
};

struct zsl_ranking {
  zerosel::RankingReport r;
};

namespace {

thread_local std::string t_error;

int fail(int code, const std::string& msg) {
  t_error = msg;
  return code;
}

// Runs f and maps library exceptions onto the status codes. Order matters:
// the library's runtime_error subclasses must be matched before the generic
// catch.
template <typename F>
int guarded(F&& f) {
  try {
    f();
    return ZSL_OK;
  } catch (const zerosel::io_error& e) {
    return fail(ZSL_ERR_IO, e.what());
  } catch (const zerosel::parse_error& e) {
    return fail(ZSL_ERR_PARSE, e.what());
  } catch (const zerosel::numeric_error& e) {
    return fail(ZSL_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ZSL_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(ZSL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ZSL_ERR_INTERNAL, "unknown error");
  }
}

int require(const void* p, const char* what) {
  if (p != nullptr) return ZSL_OK;
  return fail(ZSL_ERR_INVALID, std::string(what) + " is NULL");
}

std::vector<int> to_int_vector(const int32_t* data, int64_t n) {
  return std::vector<int>(data, data + n);
}

template <typename T, typename Src>
int copy_out(const Src& src, T* out, int64_t capacity, const char* what) {
  if (int rc = require(out, "output buffer"); rc != ZSL_OK) return rc;
  const auto needed = static_cast<int64_t>(src.size());
  if (capacity < needed) {
    return fail(ZSL_ERR_INVALID, std::string(what) + ": buffer holds " +
                                     std::to_string(capacity) + " elements, need " +
                                     std::to_string(needed));
  }
  for (int64_t i = 0; i < needed; ++i)
    out[i] = static_cast<T>(src[static_cast<std::size_t>(i)]);
  return ZSL_OK;
}

zsl_matrix* wrap(zerosel::Matrix m) { return new zsl_matrix{std::move(m)}; }
zsl_labels* wrap(zerosel::ClassLabels l) { return new zsl_labels{std::move(l)}; }

zsl_selection* wrap_ranked(const zerosel::RankedModel& model) {
  auto* s = new zsl_selection;
  s->scores = model.row_norms;
  s->ranking = model.ranking;
  s->iterations = 1;
  s->converged = true;
  return s;
}

std::vector<std::pair<std::string, std::string>> header_pairs(const char* const* keys,
                                                              const char* const* values,
                                                              int64_t n) {
  if (n < 0) throw std::invalid_argument("header: negative entry count");
  if (n > 0 && (keys == nullptr || values == nullptr))
    throw std::invalid_argument("header: NULL key or value array with nonzero count");
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    if (keys[i] == nullptr || values[i] == nullptr)
      throw std::invalid_argument("header: NULL entry at index " + std::to_string(i));
    pairs.emplace_back(keys[i], values[i]);
  }
  return pairs;
}

zerosel::EvalReport to_cpp(const zsl_eval_report& r) {
  return zerosel::EvalReport{r.k_features, r.acc_mean, r.acc_sd, r.nmi_mean, r.nmi_sd,
                             r.repeats};
}

zsl_eval_report to_c(const zerosel::EvalReport& r) {
  return zsl_eval_report{r.k_features, r.acc_mean, r.acc_sd, r.nmi_mean, r.nmi_sd, r.repeats};
}

}  // namespace

extern "C" {

const char* zsl_last_error(void) { return t_error.c_str(); }

const char* zsl_version(void) { return "1.0.0"; }

int zsl_format_double(double value, char* buf, int64_t capacity) {
  if (int rc = require(buf, "buf"); rc != ZSL_OK) return rc;
  return guarded([&] {
    const std::string text = zerosel::format_double(value);
    if (capacity < static_cast<int64_t>(text.size()) + 1)
      throw std::invalid_argument("format_double: buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

/* ---- matrices ---- */

int zsl_matrix_create(const double* data, int64_t rows, int64_t cols, zsl_matrix** out) {
  if (int rc = require(data, "data"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (rows < 1 || cols < 1) throw std::invalid_argument("matrix: dimensions must be >= 1");
    zerosel::Matrix m(rows, cols);
    for (int64_t i = 0; i < rows; ++i)
      for (int64_t j = 0; j < cols; ++j) m(i, j) = data[i * cols + j];
    *out = wrap(std::move(m));
  });
}

int zsl_matrix_load(const char* path, zsl_matrix** out) {
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] { *out = wrap(zerosel::load_matrix(path)); });
}

int zsl_matrix_save(const zsl_matrix* m, const char* path) {
  if (int rc = require(m, "matrix"); rc != ZSL_OK) return rc;
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  return guarded([&] { zerosel::save_matrix(m->m, path); });
}

int64_t zsl_matrix_rows(const zsl_matrix* m) { return m == nullptr ? 0 : m->m.rows(); }

int64_t zsl_matrix_cols(const zsl_matrix* m) { return m == nullptr ? 0 : m->m.cols(); }

int zsl_matrix_get(const zsl_matrix* m, int64_t row, int64_t col, double* out) {
  if (int rc = require(m, "matrix"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  if (row < 0 || row >= m->m.rows() || col < 0 || col >= m->m.cols())
    return fail(ZSL_ERR_INVALID, "matrix: index (" + std::to_string(row) + ", " +
                                     std::to_string(col) + ") out of range");
  *out = m->m(row, col);
  return ZSL_OK;
}

int zsl_matrix_copy_data(const zsl_matrix* m, double* out, int64_t capacity) {
  if (int rc = require(m, "matrix"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  const int64_t needed = m->m.rows() * m->m.cols();
  if (capacity < needed)
    return fail(ZSL_ERR_INVALID, "matrix: buffer holds " + std::to_string(capacity) +
                                     " elements, need " + std::to_string(needed));
  for (int64_t i = 0; i < m->m.rows(); ++i)
    for (int64_t j = 0; j < m->m.cols(); ++j) out[i * m->m.cols() + j] = m->m(i, j);
  return ZSL_OK;
}

void zsl_matrix_free(zsl_matrix* m) { delete m; }

/* ---- labels ---- */

int zsl_labels_create(const int32_t* values, int64_t n, zsl_labels** out) {
  if (int rc = require(values, "values"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (n < 1) throw std::invalid_argument("labels: empty");
    *out = wrap(zerosel::make_class_labels(to_int_vector(values, n)));
  });
}

int zsl_labels_load(const char* path, zsl_labels** out) {
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] { *out = wrap(zerosel::load_labels(path)); });
}

int zsl_labels_save(const zsl_labels* l, const char* path) {
  if (int rc = require(l, "labels"); rc != ZSL_OK) return rc;
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  return guarded([&] { zerosel::save_labels(l->l, path); });
}

int64_t zsl_labels_count(const zsl_labels* l) {
  return l == nullptr ? 0 : static_cast<int64_t>(l->l.values.size());
}

int32_t zsl_labels_num_classes(const zsl_labels* l) {
  return l == nullptr ? 0 : l->l.num_classes;
}

int zsl_labels_copy_values(const zsl_labels* l, int32_t* out, int64_t capacity) {
  if (int rc = require(l, "labels"); rc != ZSL_OK) return rc;
  return copy_out(l->l.values, out, capacity, "labels");
}

void zsl_labels_free(zsl_labels* l) { delete l; }

/* ---- data transforms ---- */

int zsl_attribute_table_load(const char* path, int32_t num_classes, zsl_matrix** out) {
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] { *out = wrap(zerosel::load_attribute_table(path, num_classes)); });
}

int zsl_one_hot_attributes(int32_t num_classes, zsl_matrix** out) {
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] { *out = wrap(zerosel::one_hot_attributes(num_classes)); });
}

int zsl_class_attributes_from_instances(const zsl_matrix* instance_attrs,
                                        const zsl_labels* labels, zsl_matrix** out) {
  if (int rc = require(instance_attrs, "instance_attrs"); rc != ZSL_OK) return rc;
  if (int rc = require(labels, "labels"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded(
      [&] { *out = wrap(zerosel::class_attributes_from_instances(instance_attrs->m, labels->l)); });
}

int zsl_expand_semantic_labels(const zsl_labels* labels, const zsl_matrix* attrs,
                               zsl_matrix** out) {
  if (int rc = require(labels, "labels"); rc != ZSL_OK) return rc;
  if (int rc = require(attrs, "attrs"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] { *out = wrap(zerosel::expand_semantic_labels(labels->l, attrs->m)); });
}

int zsl_standardize_columns(const zsl_matrix* m, zsl_matrix** out) {
  if (int rc = require(m, "matrix"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] { *out = wrap(zerosel::standardize_columns(m->m)); });
}

int zsl_select_columns(const zsl_matrix* m, const int32_t* cols, int64_t k, zsl_matrix** out) {
  if (int rc = require(m, "matrix"); rc != ZSL_OK) return rc;
  if (int rc = require(cols, "cols"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (k < 1) throw std::invalid_argument("select_columns: need at least one column");
    *out = wrap(zerosel::select_columns(m->m, to_int_vector(cols, k)));
  });
}

int zsl_subsample_labeled_ratio(const zsl_matrix* x, const zsl_labels* labels, double ratio,
                                uint64_t seed, zsl_matrix** out_x, zsl_labels** out_labels,
                                int32_t* floored_classes) {
  if (int rc = require(x, "x"); rc != ZSL_OK) return rc;
  if (int rc = require(labels, "labels"); rc != ZSL_OK) return rc;
  if (int rc = require(out_x, "out_x"); rc != ZSL_OK) return rc;
  if (int rc = require(out_labels, "out_labels"); rc != ZSL_OK) return rc;
  return guarded([&] {
    auto res = zerosel::subsample_labeled_ratio(x->m, labels->l, ratio, seed);
    if (floored_classes != nullptr) *floored_classes = res.floored_classes;
    *out_x = wrap(std::move(res.x));
    *out_labels = wrap(std::move(res.labels));
  });
}

/* ---- attribute-supervised selection ---- */

void zsl_semfs_config_init(zsl_semfs_config* cfg) {
  if (cfg == nullptr) return;
  const zerosel::semfs::SemfsConfig d;
  cfg->alpha = d.alpha;
  cfg->gamma = d.gamma;
  cfg->max_iters = d.max_iters;
  cfg->rel_tol = d.rel_tol;
  cfg->pgd_max_steps = d.pgd_max_steps;
  cfg->pgd_init_step = d.pgd_init_step;
  cfg->armijo_c = d.armijo_c;
  cfg->backtrack_factor = d.backtrack_factor;
  cfg->s_init_uniform = d.s_init == zerosel::semfs::SInit::Uniform ? 1 : 0;
}

int zsl_semfs_fit(const zsl_matrix* x, const zsl_labels* labels, const zsl_matrix* attrs,
                  const zsl_semfs_config* cfg, zsl_selection** out) {
  if (int rc = require(x, "x"); rc != ZSL_OK) return rc;
  if (int rc = require(labels, "labels"); rc != ZSL_OK) return rc;
  if (int rc = require(attrs, "attrs"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] {
    zerosel::semfs::SemfsConfig c;
    if (cfg != nullptr) {
      c.alpha = cfg->alpha;
      c.gamma = cfg->gamma;
      c.max_iters = cfg->max_iters;
      c.rel_tol = cfg->rel_tol;
      c.pgd_max_steps = cfg->pgd_max_steps;
      c.pgd_init_step = cfg->pgd_init_step;
      c.armijo_c = cfg->armijo_c;
      c.backtrack_factor = cfg->backtrack_factor;
      c.s_init = cfg->s_init_uniform != 0 ? zerosel::semfs::SInit::Uniform
                                          : zerosel::semfs::SInit::Ones;
    }
    auto res = zerosel::semfs::fit(x->m, labels->l, attrs->m, c);
    auto* s = new zsl_selection;
    s->scores = std::move(res.scores);
    s->ranking = std::move(res.ranking);
    s->trace = std::move(res.objective_trace);
    s->pgd_steps = std::move(res.pgd_steps);
    s->has_pgd_steps = true;
    s->iterations = res.iterations_run;
    s->converged = res.converged;
    *out = s;
  });
}

/* ---- baseline selectors ---- */

void zsl_l21_config_init(zsl_l21_config* cfg) {
  if (cfg == nullptr) return;
  const zerosel::L21Config d;
  cfg->gamma = d.gamma;
  cfg->max_iters = d.max_iters;
  cfg->rel_tol = d.rel_tol;
  cfg->epsilon = d.epsilon;
}

int zsl_l21_fit(const zsl_matrix* x, const zsl_matrix* y, const zsl_l21_config* cfg,
                zsl_selection** out) {
  if (int rc = require(x, "x"); rc != ZSL_OK) return rc;
  if (int rc = require(y, "y"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] {
    zerosel::L21Config c;
    if (cfg != nullptr) {
      c.gamma = cfg->gamma;
      c.max_iters = cfg->max_iters;
      c.rel_tol = cfg->rel_tol;
      c.epsilon = cfg->epsilon;
    }
    auto res = zerosel::fit_l21(x->m, y->m, c);
    auto* s = new zsl_selection;
    s->scores = std::move(res.row_norms);
    s->ranking = std::move(res.ranking);
    s->trace = std::move(res.objective_trace);
    s->iterations = res.iterations_run;
    s->converged = res.converged;
    *out = s;
  });
}

int zsl_ridge_fit(const zsl_matrix* x, const zsl_matrix* y, double gamma, zsl_selection** out) {
  if (int rc = require(x, "x"); rc != ZSL_OK) return rc;
  if (int rc = require(y, "y"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] { *out = wrap_ranked(zerosel::fit_ridge(x->m, y->m, gamma)); });
}

int zsl_random_select(int32_t d, int32_t k, uint64_t seed, int32_t* out_indices) {
  if (int rc = require(out_indices, "out_indices"); rc != ZSL_OK) return rc;
  return guarded([&] {
    const auto picked = zerosel::select_random(d, k, seed);
    for (std::size_t i = 0; i < picked.size(); ++i)
      out_indices[i] = static_cast<int32_t>(picked[i]);
  });
}

/* ---- selection results ---- */

int64_t zsl_selection_dim(const zsl_selection* s) {
  return s == nullptr ? 0 : static_cast<int64_t>(s->ranking.size());
}

int zsl_selection_ranking(const zsl_selection* s, int32_t* out, int64_t capacity) {
  if (int rc = require(s, "selection"); rc != ZSL_OK) return rc;
  return copy_out(s->ranking, out, capacity, "ranking");
}

int zsl_selection_scores(const zsl_selection* s, double* out, int64_t capacity) {
  if (int rc = require(s, "selection"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  if (capacity < s->scores.size())
    return fail(ZSL_ERR_INVALID, "scores: buffer holds " + std::to_string(capacity) +
                                     " elements, need " + std::to_string(s->scores.size()));
  for (Eigen::Index i = 0; i < s->scores.size(); ++i) out[i] = s->scores(i);
  return ZSL_OK;
}

int64_t zsl_selection_trace_len(const zsl_selection* s) {
  return s == nullptr ? 0 : static_cast<int64_t>(s->trace.size());
}

int zsl_selection_trace(const zsl_selection* s, double* out, int64_t capacity) {
  if (int rc = require(s, "selection"); rc != ZSL_OK) return rc;
  return copy_out(s->trace, out, capacity, "trace");
}

int zsl_selection_iterations(const zsl_selection* s) {
  return s == nullptr ? -1 : s->iterations;
}

int zsl_selection_converged(const zsl_selection* s) {
  return s == nullptr ? -1 : (s->converged ? 1 : 0);
}

int zsl_selection_save_trace_csv(const zsl_selection* s, const char* path) {
  if (int rc = require(s, "selection"); rc != ZSL_OK) return rc;
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (!s->has_pgd_steps)
      throw std::invalid_argument("trace: this selection carries no per-iteration step counts");
    zerosel::save_trace_csv(path, s->trace, s->pgd_steps);
  });
}

void zsl_selection_free(zsl_selection* s) { delete s; }

/* ---- clustering evaluation ---- */

int zsl_evaluate_selection(const zsl_matrix* x, const zsl_labels* labels,
                           const int32_t* selected, int64_t n_selected, int32_t repeats,
                           uint64_t seed, zsl_eval_report* out) {
  if (int rc = require(x, "x"); rc != ZSL_OK) return rc;
  if (int rc = require(labels, "labels"); rc != ZSL_OK) return rc;
  if (int rc = require(selected, "selected"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (n_selected < 1) throw std::invalid_argument("evaluate: empty selection");
    const auto rep = zerosel::evaluate_selection(x->m, labels->l,
                                                 to_int_vector(selected, n_selected), repeats,
                                                 seed);
    *out = to_c(rep);
  });
}

int zsl_sweep_feature_counts(const zsl_matrix* x, const zsl_labels* labels,
                             const int32_t* ranking, int64_t ranking_len,
                             const int32_t* counts, int64_t n_counts, int32_t repeats,
                             uint64_t seed, zsl_eval_report* out_rows, int64_t capacity,
                             int64_t* rows_written) {
  if (int rc = require(x, "x"); rc != ZSL_OK) return rc;
  if (int rc = require(labels, "labels"); rc != ZSL_OK) return rc;
  if (int rc = require(ranking, "ranking"); rc != ZSL_OK) return rc;
  if (int rc = require(out_rows, "out_rows"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (ranking_len < 1) throw std::invalid_argument("sweep: empty ranking");
    if (n_counts > 0 && counts == nullptr)
      throw std::invalid_argument("sweep: NULL counts with nonzero count");
    std::vector<int> count_vec = n_counts > 0 ? to_int_vector(counts, n_counts)
                                              : zerosel::default_sweep_counts();
    if (capacity < static_cast<int64_t>(count_vec.size()))
      throw std::invalid_argument("sweep: buffer holds " + std::to_string(capacity) +
                                  " rows, need " + std::to_string(count_vec.size()));
    const auto reports = zerosel::sweep_feature_counts(
        x->m, labels->l, to_int_vector(ranking, ranking_len), count_vec, repeats, seed);
    for (std::size_t i = 0; i < reports.size(); ++i) out_rows[i] = to_c(reports[i]);
    if (rows_written != nullptr) *rows_written = static_cast<int64_t>(reports.size());
  });
}

int zsl_default_sweep_counts(int32_t* out, int64_t capacity, int64_t* written) {
  const auto counts = zerosel::default_sweep_counts();
  if (written != nullptr) *written = static_cast<int64_t>(counts.size());
  if (out == nullptr && capacity == 0) return ZSL_OK;
  return copy_out(counts, out, capacity, "counts");
}

int zsl_kmeans(const zsl_matrix* x, int32_t k, uint64_t seed, int32_t max_iter,
               int32_t* assignments, double* inertia) {
  if (int rc = require(x, "x"); rc != ZSL_OK) return rc;
  if (int rc = require(assignments, "assignments"); rc != ZSL_OK) return rc;
  return guarded([&] {
    const auto cl = zerosel::kmeans(x->m, k, seed, max_iter);
    for (std::size_t i = 0; i < cl.assignments.size(); ++i)
      assignments[i] = static_cast<int32_t>(cl.assignments[i]);
    if (inertia != nullptr) *inertia = cl.inertia;
  });
}

int zsl_clustering_accuracy(const int32_t* pred, const int32_t* truth, int64_t n, double* out) {
  if (int rc = require(pred, "pred"); rc != ZSL_OK) return rc;
  if (int rc = require(truth, "truth"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (n < 1) throw std::invalid_argument("accuracy: empty partitions");
    *out = zerosel::clustering_accuracy(to_int_vector(pred, n), to_int_vector(truth, n));
  });
}

int zsl_nmi(const int32_t* a, const int32_t* b, int64_t n, double* out) {
  if (int rc = require(a, "a"); rc != ZSL_OK) return rc;
  if (int rc = require(b, "b"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (n < 1) throw std::invalid_argument("nmi: empty partitions");
    *out = zerosel::nmi(to_int_vector(a, n), to_int_vector(b, n));
  });
}

/* ---- synthetic benchmark ---- */

void zsl_synth_params_init(zsl_synth_params* p) {
  if (p == nullptr) return;
  *p = zsl_synth_params{};
}

int zsl_synth_generate(const zsl_synth_params* p, uint64_t seed, zsl_dataset** out) {
  if (int rc = require(p, "params"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] {
    zerosel::SynthParams sp;
    sp.n_seen = p->n_seen;
    sp.n_unseen = p->n_unseen;
    sp.d = p->d;
    sp.m = p->m;
    sp.c_seen = p->c_seen;
    sp.c_unseen = p->c_unseen;
    sp.k_info = p->k_info;
    sp.attr_noise_sd = p->attr_noise_sd;
    sp.feature_noise_sd = p->feature_noise_sd;
    *out = new zsl_dataset{zerosel::generate_synthetic_zero_shot(sp, seed)};
  });
}

int zsl_dataset_save(const zsl_dataset* ds, const char* dir) {
  if (int rc = require(ds, "dataset"); rc != ZSL_OK) return rc;
  if (int rc = require(dir, "dir"); rc != ZSL_OK) return rc;
  return guarded([&] { zerosel::save_synthetic_dataset(ds->d, dir); });
}

int zsl_dataset_seen(const zsl_dataset* ds, zsl_matrix** x, zsl_labels** labels,
                     zsl_matrix** attrs) {
  if (int rc = require(ds, "dataset"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (x != nullptr) *x = wrap(ds->d.seen_x);
    if (labels != nullptr) *labels = wrap(ds->d.seen_labels);
    if (attrs != nullptr) *attrs = wrap(ds->d.seen_attrs);
  });
}

int zsl_dataset_unseen(const zsl_dataset* ds, zsl_matrix** x, zsl_labels** labels,
                       zsl_matrix** attrs) {
  if (int rc = require(ds, "dataset"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (x != nullptr) *x = wrap(ds->d.unseen_x);
    if (labels != nullptr) *labels = wrap(ds->d.unseen_labels);
    if (attrs != nullptr) *attrs = wrap(ds->d.unseen_attrs);
  });
}

int zsl_dataset_informative(const zsl_dataset* ds, int32_t* out, int64_t capacity,
                            int64_t* written) {
  if (int rc = require(ds, "dataset"); rc != ZSL_OK) return rc;
  if (written != nullptr) *written = static_cast<int64_t>(ds->d.informative_features.size());
  if (out == nullptr && capacity == 0) return ZSL_OK;
  return copy_out(ds->d.informative_features, out, capacity, "informative");
}

void zsl_dataset_free(zsl_dataset* ds) { delete ds; }

/* ---- result files ---- */

int zsl_save_ranking_report(const char* path, const int32_t* ranking, int64_t n,
                            const char* const* keys, const char* const* values,
                            int64_t n_header) {
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  if (int rc = require(ranking, "ranking"); rc != ZSL_OK) return rc;
  return guarded([&] {
    if (n < 1) throw std::invalid_argument("ranking report: empty ranking");
    zerosel::save_ranking_report(path, to_int_vector(ranking, n),
                                 header_pairs(keys, values, n_header));
  });
}

int zsl_ranking_load(const char* path, zsl_ranking** out) {
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  if (int rc = require(out, "out"); rc != ZSL_OK) return rc;
  return guarded([&] { *out = new zsl_ranking{zerosel::load_ranking_report(path)}; });
}

int64_t zsl_ranking_length(const zsl_ranking* r) {
  return r == nullptr ? 0 : static_cast<int64_t>(r->r.ranking.size());
}

int zsl_ranking_indices(const zsl_ranking* r, int32_t* out, int64_t capacity) {
  if (int rc = require(r, "ranking"); rc != ZSL_OK) return rc;
  return copy_out(r->r.ranking, out, capacity, "ranking");
}

int64_t zsl_ranking_header_count(const zsl_ranking* r) {
  return r == nullptr ? 0 : static_cast<int64_t>(r->r.header.size());
}

const char* zsl_ranking_header_key(const zsl_ranking* r, int64_t i) {
  if (r == nullptr || i < 0 || i >= static_cast<int64_t>(r->r.header.size())) return nullptr;
  return r->r.header[static_cast<std::size_t>(i)].first.c_str();
}

const char* zsl_ranking_header_value(const zsl_ranking* r, int64_t i) {
  if (r == nullptr || i < 0 || i >= static_cast<int64_t>(r->r.header.size())) return nullptr;
  return r->r.header[static_cast<std::size_t>(i)].second.c_str();
}

void zsl_ranking_free(zsl_ranking* r) { delete r; }

int zsl_save_sweep_csv(const char* path, const zsl_eval_report* rows, int64_t n) {
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  if (int rc = require(rows, "rows"); rc != ZSL_OK) return rc;
  return guarded([&] {
    std::vector<zerosel::EvalReport> reports;
    reports.reserve(static_cast<std::size_t>(n));
    for (int64_t i = 0; i < n; ++i) reports.push_back(to_cpp(rows[i]));
    zerosel::save_sweep_csv(path, reports);
  });
}

int zsl_save_manifest(const char* const* keys, const char* const* values, int64_t n,
                      const char* path) {
  if (int rc = require(path, "path"); rc != ZSL_OK) return rc;
  return guarded([&] { zerosel::save_manifest(header_pairs(keys, values, n), path); });
}

} /* extern "C" */
