#ifndef ZEROSEL_H
#define ZEROSEL_H

/*
 * C interface to the zerosel feature-selection library.
 *
 * Every fallible call returns ZSL_OK or an error code; the message for the
 * most recent failure on the calling thread is available from
 * zsl_last_error(). Objects are opaque handles created into an out
 * parameter and released with the matching _free function; _free accepts
 * NULL. Matrix data crosses the boundary in row-major order. Copy-out
 * functions take the caller's buffer capacity in elements and fail with
 * ZSL_ERR_INVALID when it is too small.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  ZSL_OK = 0,
  ZSL_ERR_INVALID = 1,  /* bad argument, config, or buffer */
  ZSL_ERR_IO = 2,       /* file could not be read or written */
  ZSL_ERR_PARSE = 3,    /* malformed file contents */
  ZSL_ERR_NUMERIC = 4,  /* numerical failure (singular system, non-finite value) */
  ZSL_ERR_INTERNAL = 5
};

/* Message for the latest failing call on this thread; empty string if none.
 * The pointer stays valid until the next failing call on the same thread. */
const char* zsl_last_error(void);

const char* zsl_version(void);

/* Locale-independent decimal text with 17 significant digits, the format
 * used in every file this library writes. Needs capacity >= 32. */
int zsl_format_double(double value, char* buf, int64_t capacity);

typedef struct zsl_matrix zsl_matrix;       /* dense double matrix */
typedef struct zsl_labels zsl_labels;       /* class labels 0..c-1 */
typedef struct zsl_selection zsl_selection; /* fitted selector: scores, ranking, history */
typedef struct zsl_dataset zsl_dataset;     /* synthetic seen/unseen benchmark */
typedef struct zsl_ranking zsl_ranking;     /* ranking report loaded from a file */

/* ---- matrices (CSV files: comma-separated, no header) ---- */

int zsl_matrix_create(const double* data, int64_t rows, int64_t cols, zsl_matrix** out);
int zsl_matrix_load(const char* path, zsl_matrix** out);
int zsl_matrix_save(const zsl_matrix* m, const char* path);
int64_t zsl_matrix_rows(const zsl_matrix* m); /* 0 for NULL */
int64_t zsl_matrix_cols(const zsl_matrix* m);
int zsl_matrix_get(const zsl_matrix* m, int64_t row, int64_t col, double* out);
/* Row-major copy of all entries; capacity >= rows * cols. */
int zsl_matrix_copy_data(const zsl_matrix* m, double* out, int64_t capacity);
void zsl_matrix_free(zsl_matrix* m);

/* ---- labels (text files: one non-negative integer per line) ---- */

/* Values must cover 0..max with no empty class. */
int zsl_labels_create(const int32_t* values, int64_t n, zsl_labels** out);
int zsl_labels_load(const char* path, zsl_labels** out);
int zsl_labels_save(const zsl_labels* l, const char* path);
int64_t zsl_labels_count(const zsl_labels* l); /* 0 for NULL */
int32_t zsl_labels_num_classes(const zsl_labels* l);
int zsl_labels_copy_values(const zsl_labels* l, int32_t* out, int64_t capacity);
void zsl_labels_free(zsl_labels* l);

/* ---- data transforms ---- */

/* Attribute table with exactly num_classes rows. */
int zsl_attribute_table_load(const char* path, int32_t num_classes, zsl_matrix** out);

/* Identity attribute table, for class-label supervision. */
int zsl_one_hot_attributes(int32_t num_classes, zsl_matrix** out);

/* Per-class means of per-instance attribute rows. */
int zsl_class_attributes_from_instances(const zsl_matrix* instance_attrs,
                                        const zsl_labels* labels, zsl_matrix** out);

/* Matrix whose row i is the attribute row of instance i's class. */
int zsl_expand_semantic_labels(const zsl_labels* labels, const zsl_matrix* attrs,
                               zsl_matrix** out);

/* Per-column z-score (population sd; constant columns become zero), as a new
 * matrix. */
int zsl_standardize_columns(const zsl_matrix* m, zsl_matrix** out);

/* New matrix holding the given columns of m, in the given order. */
int zsl_select_columns(const zsl_matrix* m, const int32_t* cols, int64_t k, zsl_matrix** out);

/* Keeps max(1, floor(ratio * class size)) seeded-random instances per class,
 * preserving row order. floored_classes (nullable) receives the number of
 * classes kept alive only by the floor. */
int zsl_subsample_labeled_ratio(const zsl_matrix* x, const zsl_labels* labels, double ratio,
                                uint64_t seed, zsl_matrix** out_x, zsl_labels** out_labels,
                                int32_t* floored_classes);

/* ---- attribute-supervised selection ---- */

typedef struct zsl_semfs_config {
  double alpha;           /* weight of the class-center fit term; 0 disables it */
  double gamma;           /* ridge penalty on the projection */
  int32_t max_iters;      /* outer alternation limit */
  double rel_tol;         /* relative objective decrease that counts as converged */
  int32_t pgd_max_steps;  /* projected gradient steps on the scores per iteration */
  double pgd_init_step;
  double armijo_c;
  double backtrack_factor;
  int32_t s_init_uniform; /* 0: scores start at 1; nonzero: start at 1/d */
} zsl_semfs_config;

/* Fills in the defaults: alpha 1, gamma 0.1, 100 iterations, rel_tol 1e-6,
 * 10 PGD steps, unit initial step, Armijo 1e-4, halving backtrack, ones
 * init. */
void zsl_semfs_config_init(zsl_semfs_config* cfg);

/* Minimizes the attribute-supervised objective by alternating an exact
 * projection solve with projected gradient steps on the nonnegative feature
 * scores. attrs has one row per class. NULL cfg means defaults. */
int zsl_semfs_fit(const zsl_matrix* x, const zsl_labels* labels, const zsl_matrix* attrs,
                  const zsl_semfs_config* cfg, zsl_selection** out);

/* ---- baseline selectors ---- */

typedef struct zsl_l21_config {
  double gamma;      /* weight of the row-sparsity penalty */
  int32_t max_iters; /* reweighted least squares iteration limit */
  double rel_tol;
  double epsilon;    /* row-norm floor in the reweighting */
} zsl_l21_config;

/* Defaults: gamma 0.1, 100 iterations, rel_tol 1e-6, epsilon 1e-10. */
void zsl_l21_config_init(zsl_l21_config* cfg);

/* Row-sparse regression of y on x, ranked by weight row norms. The
 * selection's scores are the row norms. NULL cfg means defaults. */
int zsl_l21_fit(const zsl_matrix* x, const zsl_matrix* y, const zsl_l21_config* cfg,
                zsl_selection** out);

/* Ridge regression of y on x, ranked by weight row norms. */
int zsl_ridge_fit(const zsl_matrix* x, const zsl_matrix* y, double gamma, zsl_selection** out);

/* k distinct indices from [0, d), uniform without replacement, written to
 * out_indices (capacity k). Fully determined by the seed. */
int zsl_random_select(int32_t d, int32_t k, uint64_t seed, int32_t* out_indices);

/* ---- selection results ---- */

int64_t zsl_selection_dim(const zsl_selection* s); /* feature count; 0 for NULL */
/* All indices, best first. */
int zsl_selection_ranking(const zsl_selection* s, int32_t* out, int64_t capacity);
/* Per-feature scores the ranking sorts by. */
int zsl_selection_scores(const zsl_selection* s, double* out, int64_t capacity);
int64_t zsl_selection_trace_len(const zsl_selection* s);
int zsl_selection_trace(const zsl_selection* s, double* out, int64_t capacity);
int zsl_selection_iterations(const zsl_selection* s); /* -1 for NULL */
int zsl_selection_converged(const zsl_selection* s);  /* 0 or 1; -1 for NULL */
/* Objective trace as CSV with per-iteration decrease and accepted PGD step
 * counts. Only selections from zsl_semfs_fit carry the step counts. */
int zsl_selection_save_trace_csv(const zsl_selection* s, const char* path);
void zsl_selection_free(zsl_selection* s);

/* ---- clustering evaluation ---- */

typedef struct zsl_eval_report {
  int32_t k_features;
  double acc_mean;
  double acc_sd;
  double nmi_mean;
  double nmi_sd;
  int32_t repeats;
} zsl_eval_report;

/* K-means on the selected columns with k = class count, repeated with seeds
 * seed, seed+1, ...; reports mean and sample sd of clustering accuracy and
 * normalized mutual information against the labels. ZEROSEL_THREADS caps
 * worker threads without changing the results. */
int zsl_evaluate_selection(const zsl_matrix* x, const zsl_labels* labels,
                           const int32_t* selected, int64_t n_selected, int32_t repeats,
                           uint64_t seed, zsl_eval_report* out);

/* evaluate_selection on each ranking prefix length in counts (NULL counts
 * with n_counts 0 means the default 5,10,...,50). rows_written (nullable)
 * receives the row count; capacity must cover it. */
int zsl_sweep_feature_counts(const zsl_matrix* x, const zsl_labels* labels,
                             const int32_t* ranking, int64_t ranking_len,
                             const int32_t* counts, int64_t n_counts, int32_t repeats,
                             uint64_t seed, zsl_eval_report* out_rows, int64_t capacity,
                             int64_t* rows_written);

/* The default sweep prefix lengths; written (nullable) receives how many.
 * Call with out NULL and capacity 0 to query the length. */
int zsl_default_sweep_counts(int32_t* out, int64_t capacity, int64_t* written);

/* Lloyd K-means with seeded distance-weighted initialization. assignments
 * needs capacity = rows(x); inertia is nullable. */
int zsl_kmeans(const zsl_matrix* x, int32_t k, uint64_t seed, int32_t max_iter,
               int32_t* assignments, double* inertia);

/* Best cluster-to-class matching accuracy in [0, 1]. */
int zsl_clustering_accuracy(const int32_t* pred, const int32_t* truth, int64_t n, double* out);

/* Normalized mutual information in [0, 1], symmetric. */
int zsl_nmi(const int32_t* a, const int32_t* b, int64_t n, double* out);

/* ---- synthetic benchmark ---- */

typedef struct zsl_synth_params {
  int32_t n_seen;
  int32_t n_unseen;
  int32_t d;      /* feature count */
  int32_t m;      /* attribute count */
  int32_t c_seen; /* seen class count */
  int32_t c_unseen;
  int32_t k_info; /* informative feature count */
  double attr_noise_sd;
  double feature_noise_sd;
} zsl_synth_params;

void zsl_synth_params_init(zsl_synth_params* p); /* all zero */

/* Seeded zero-shot benchmark with disjoint seen/unseen classes sharing one
 * attribute-to-feature map. */
int zsl_synth_generate(const zsl_synth_params* p, uint64_t seed, zsl_dataset** out);

/* Writes the seven dataset files (features, labels, attrs per split plus
 * manifest.txt) into dir, creating it if needed. */
int zsl_dataset_save(const zsl_dataset* ds, const char* dir);

/* Fresh handles for a split's pieces; each out pointer is nullable. */
int zsl_dataset_seen(const zsl_dataset* ds, zsl_matrix** x, zsl_labels** labels,
                     zsl_matrix** attrs);
int zsl_dataset_unseen(const zsl_dataset* ds, zsl_matrix** x, zsl_labels** labels,
                       zsl_matrix** attrs);
/* Sorted informative feature indices; written (nullable) receives how many.
 * Call with out NULL and capacity 0 to query the length. */
int zsl_dataset_informative(const zsl_dataset* ds, int32_t* out, int64_t capacity,
                            int64_t* written);
void zsl_dataset_free(zsl_dataset* ds);

/* ---- result files ---- */

/* '# key=value' header lines followed by one ranked index per line. keys and
 * values are parallel arrays of n_header entries (both NULL for none). */
int zsl_save_ranking_report(const char* path, const int32_t* ranking, int64_t n,
                            const char* const* keys, const char* const* values,
                            int64_t n_header);
int zsl_ranking_load(const char* path, zsl_ranking** out);
int64_t zsl_ranking_length(const zsl_ranking* r);
int zsl_ranking_indices(const zsl_ranking* r, int32_t* out, int64_t capacity);
int64_t zsl_ranking_header_count(const zsl_ranking* r);
/* Pointers stay valid until the handle is freed; NULL when i is out of
 * range. */
const char* zsl_ranking_header_key(const zsl_ranking* r, int64_t i);
const char* zsl_ranking_header_value(const zsl_ranking* r, int64_t i);
void zsl_ranking_free(zsl_ranking* r);

/* CSV with columns k_features, acc_mean, acc_sd, nmi_mean, nmi_sd, repeats. */
int zsl_save_sweep_csv(const char* path, const zsl_eval_report* rows, int64_t n);

/* key=value lines, one per entry. */
int zsl_save_manifest(const char* const* keys, const char* const* values, int64_t n,
                      const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ZEROSEL_H */
