// Exercises the C interface end to end: everything here goes through
// zerosel.h handles and status codes, never the C++ headers.
#include "zerosel.h"

#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("zerosel_capi_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool is_permutation_of_range(const std::vector<int32_t>& v) {
  std::vector<int32_t> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int32_t>(i)) return false;
  return true;
}

zsl_dataset* small_dataset() {
  zsl_synth_params p;
  zsl_synth_params_init(&p);
  p.n_seen = 60;
  p.n_unseen = 40;
  p.d = 12;
  p.m = 4;
  p.c_seen = 3;
  p.c_unseen = 2;
  p.k_info = 3;
  p.feature_noise_sd = 0.1;
  zsl_dataset* ds = nullptr;
  REQUIRE(zsl_synth_generate(&p, 77, &ds) == ZSL_OK);
  return ds;
}

}  // namespace

TEST_CASE("version and error text basics") {
  REQUIRE(zsl_version() != nullptr);
  CHECK(std::string(zsl_version()) == "1.0.0");
  REQUIRE(zsl_last_error() != nullptr);
}

TEST_CASE("error codes distinguish failure kinds") {
  zsl_matrix* m = nullptr;
  CHECK(zsl_matrix_load("/nonexistent/zerosel_missing.csv", &m) == ZSL_ERR_IO);
  CHECK(std::string(zsl_last_error()).find("zerosel_missing.csv") != std::string::npos);

  TempDir tmp;
  write_file(tmp.file("bad.csv"), "1.0,2.0\n3.0\n");
  CHECK(zsl_matrix_load(tmp.file("bad.csv").c_str(), &m) == ZSL_ERR_PARSE);
  CHECK(std::string(zsl_last_error()).find("ragged") != std::string::npos);

  CHECK(zsl_matrix_load(nullptr, &m) == ZSL_ERR_INVALID);
  CHECK(std::string(zsl_last_error()).find("NULL") != std::string::npos);
  CHECK(zsl_matrix_load("x.csv", nullptr) == ZSL_ERR_INVALID);
}

TEST_CASE("matrix create, access, and file round trip") {
  const double data[6] = {1.5, -2.0, 0.25, 4.0, 5.5, -6.75};
  zsl_matrix* m = nullptr;
  REQUIRE(zsl_matrix_create(data, 2, 3, &m) == ZSL_OK);
  CHECK(zsl_matrix_rows(m) == 2);
  CHECK(zsl_matrix_cols(m) == 3);
  double v = 0.0;
  REQUIRE(zsl_matrix_get(m, 1, 2, &v) == ZSL_OK);
  CHECK(v == -6.75);
  CHECK(zsl_matrix_get(m, 2, 0, &v) == ZSL_ERR_INVALID);

  double out[6] = {0};
  REQUIRE(zsl_matrix_copy_data(m, out, 6) == ZSL_OK);
  for (int i = 0; i < 6; ++i) CHECK(out[i] == data[i]);
  CHECK(zsl_matrix_copy_data(m, out, 5) == ZSL_ERR_INVALID);
  CHECK(std::string(zsl_last_error()).find("need") != std::string::npos);

  TempDir tmp;
  REQUIRE(zsl_matrix_save(m, tmp.file("m.csv").c_str()) == ZSL_OK);
  zsl_matrix* back = nullptr;
  REQUIRE(zsl_matrix_load(tmp.file("m.csv").c_str(), &back) == ZSL_OK);
  double out2[6] = {0};
  REQUIRE(zsl_matrix_copy_data(back, out2, 6) == ZSL_OK);
  for (int i = 0; i < 6; ++i) CHECK(out2[i] == data[i]);

  zsl_matrix_free(m);
  zsl_matrix_free(back);
  zsl_matrix_free(nullptr);
}

TEST_CASE("labels validate density and round trip") {
  const int32_t values[5] = {0, 1, 1, 2, 0};
  zsl_labels* l = nullptr;
  REQUIRE(zsl_labels_create(values, 5, &l) == ZSL_OK);
  CHECK(zsl_labels_count(l) == 5);
  CHECK(zsl_labels_num_classes(l) == 3);
  int32_t out[5] = {0};
  REQUIRE(zsl_labels_copy_values(l, out, 5) == ZSL_OK);
  for (int i = 0; i < 5; ++i) CHECK(out[i] == values[i]);

  const int32_t gap[3] = {0, 2, 2};
  zsl_labels* bad = nullptr;
  CHECK(zsl_labels_create(gap, 3, &bad) == ZSL_ERR_INVALID);
  CHECK(std::string(zsl_last_error()).find("class 1") != std::string::npos);

  TempDir tmp;
  REQUIRE(zsl_labels_save(l, tmp.file("l.txt").c_str()) == ZSL_OK);
  zsl_labels* back = nullptr;
  REQUIRE(zsl_labels_load(tmp.file("l.txt").c_str(), &back) == ZSL_OK);
  CHECK(zsl_labels_count(back) == 5);
  CHECK(zsl_labels_num_classes(back) == 3);

  zsl_labels_free(l);
  zsl_labels_free(back);
  zsl_labels_free(nullptr);
}

TEST_CASE("one-hot attributes are the identity table") {
  zsl_matrix* oh = nullptr;
  REQUIRE(zsl_one_hot_attributes(3, &oh) == ZSL_OK);
  CHECK(zsl_matrix_rows(oh) == 3);
  CHECK(zsl_matrix_cols(oh) == 3);
  for (int64_t i = 0; i < 3; ++i) {
    for (int64_t j = 0; j < 3; ++j) {
      double v = -1.0;
      REQUIRE(zsl_matrix_get(oh, i, j, &v) == ZSL_OK);
      CHECK(v == (i == j ? 1.0 : 0.0));
    }
  }
  zsl_matrix_free(oh);
  zsl_matrix* bad = nullptr;
  CHECK(zsl_one_hot_attributes(0, &bad) == ZSL_ERR_INVALID);
}

TEST_CASE("semantic label expansion copies class rows") {
  const int32_t values[4] = {1, 0, 1, 0};
  zsl_labels* l = nullptr;
  REQUIRE(zsl_labels_create(values, 4, &l) == ZSL_OK);
  const double attr_data[4] = {10.0, 20.0, 30.0, 40.0};
  zsl_matrix* attrs = nullptr;
  REQUIRE(zsl_matrix_create(attr_data, 2, 2, &attrs) == ZSL_OK);
  zsl_matrix* ys = nullptr;
  REQUIRE(zsl_expand_semantic_labels(l, attrs, &ys) == ZSL_OK);
  CHECK(zsl_matrix_rows(ys) == 4);
  CHECK(zsl_matrix_cols(ys) == 2);
  double v = 0.0;
  REQUIRE(zsl_matrix_get(ys, 0, 0, &v) == ZSL_OK);
  CHECK(v == 30.0);
  REQUIRE(zsl_matrix_get(ys, 1, 1, &v) == ZSL_OK);
  CHECK(v == 20.0);
  zsl_matrix_free(ys);
  zsl_matrix_free(attrs);
  zsl_labels_free(l);
}

TEST_CASE("standardized columns have zero mean") {
  const double data[8] = {1.0, 10.0, 2.0, 20.0, 3.0, 30.0, 4.0, 40.0};
  zsl_matrix* m = nullptr;
  REQUIRE(zsl_matrix_create(data, 4, 2, &m) == ZSL_OK);
  zsl_matrix* z = nullptr;
  REQUIRE(zsl_standardize_columns(m, &z) == ZSL_OK);
  for (int64_t j = 0; j < 2; ++j) {
    double sum = 0.0;
    for (int64_t i = 0; i < 4; ++i) {
      double v = 0.0;
      REQUIRE(zsl_matrix_get(z, i, j, &v) == ZSL_OK);
      sum += v;
    }
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-12));
  }
  zsl_matrix_free(z);
  zsl_matrix_free(m);
}

TEST_CASE("config initializers fill the documented defaults") {
  zsl_semfs_config cfg;
  zsl_semfs_config_init(&cfg);
  CHECK(cfg.alpha == 1.0);
  CHECK(cfg.gamma == 0.1);
  CHECK(cfg.max_iters == 100);
  CHECK(cfg.rel_tol == 1e-6);
  CHECK(cfg.pgd_max_steps == 10);
  CHECK(cfg.pgd_init_step == 1.0);
  CHECK(cfg.armijo_c == 1e-4);
  CHECK(cfg.backtrack_factor == 0.5);
  CHECK(cfg.s_init_uniform == 0);

  zsl_l21_config lc;
  zsl_l21_config_init(&lc);
  CHECK(lc.gamma == 0.1);
  CHECK(lc.max_iters == 100);
  CHECK(lc.rel_tol == 1e-6);
  CHECK(lc.epsilon == 1e-10);
}

TEST_CASE("selection pipeline runs end to end through handles") {
  zsl_dataset* ds = small_dataset();
  zsl_matrix* seen_x = nullptr;
  zsl_labels* seen_labels = nullptr;
  zsl_matrix* seen_attrs = nullptr;
  REQUIRE(zsl_dataset_seen(ds, &seen_x, &seen_labels, &seen_attrs) == ZSL_OK);
  zsl_matrix* unseen_x = nullptr;
  zsl_labels* unseen_labels = nullptr;
  REQUIRE(zsl_dataset_unseen(ds, &unseen_x, &unseen_labels, nullptr) == ZSL_OK);

  zsl_selection* sel = nullptr;
  REQUIRE(zsl_semfs_fit(seen_x, seen_labels, seen_attrs, nullptr, &sel) == ZSL_OK);
  REQUIRE(zsl_selection_dim(sel) == 12);
  std::vector<int32_t> ranking(12, -1);
  REQUIRE(zsl_selection_ranking(sel, ranking.data(), 12) == ZSL_OK);
  CHECK(is_permutation_of_range(ranking));
  std::vector<double> scores(12, -1.0);
  REQUIRE(zsl_selection_scores(sel, scores.data(), 12) == ZSL_OK);
  for (double s : scores) CHECK(s >= 0.0);
  CHECK(zsl_selection_iterations(sel) >= 1);
  const int64_t tl = zsl_selection_trace_len(sel);
  REQUIRE(tl >= 2);
  std::vector<double> trace(static_cast<std::size_t>(tl), 0.0);
  REQUIRE(zsl_selection_trace(sel, trace.data(), tl) == ZSL_OK);
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-9);

  zsl_eval_report rep;
  REQUIRE(zsl_evaluate_selection(unseen_x, unseen_labels, ranking.data(), 4, 3, 5, &rep) ==
          ZSL_OK);
  CHECK(rep.k_features == 4);
  CHECK(rep.repeats == 3);
  CHECK(rep.acc_mean >= 0.0);
  CHECK(rep.acc_mean <= 1.0);
  CHECK(rep.nmi_mean >= 0.0);
  CHECK(rep.nmi_mean <= 1.0 + 1e-12);

  const int32_t counts[2] = {2, 4};
  zsl_eval_report rows[2];
  int64_t written = 0;
  REQUIRE(zsl_sweep_feature_counts(unseen_x, unseen_labels, ranking.data(), 12, counts, 2, 3,
                                   5, rows, 2, &written) == ZSL_OK);
  REQUIRE(written == 2);
  CHECK(rows[0].k_features == 2);
  CHECK(rows[1].k_features == 4);
  CHECK(rows[1].acc_mean == rep.acc_mean);

  TempDir tmp;
  REQUIRE(zsl_save_sweep_csv(tmp.file("sweep.csv").c_str(), rows, 2) == ZSL_OK);
  const std::string csv = read_file(tmp.file("sweep.csv"));
  CHECK(csv.find("k_features,acc_mean,acc_sd,nmi_mean,nmi_sd,repeats") == 0);

  zsl_selection_free(sel);
  zsl_matrix_free(seen_x);
  zsl_labels_free(seen_labels);
  zsl_matrix_free(seen_attrs);
  zsl_matrix_free(unseen_x);
  zsl_labels_free(unseen_labels);
  zsl_dataset_free(ds);
}

TEST_CASE("baseline fits work through the C surface") {
  zsl_dataset* ds = small_dataset();
  zsl_matrix* x = nullptr;
  zsl_labels* labels = nullptr;
  zsl_matrix* attrs = nullptr;
  REQUIRE(zsl_dataset_seen(ds, &x, &labels, &attrs) == ZSL_OK);
  zsl_matrix* ys = nullptr;
  REQUIRE(zsl_expand_semantic_labels(labels, attrs, &ys) == ZSL_OK);

  zsl_selection* ridge = nullptr;
  REQUIRE(zsl_ridge_fit(x, ys, 0.1, &ridge) == ZSL_OK);
  CHECK(zsl_selection_dim(ridge) == 12);
  CHECK(zsl_selection_trace_len(ridge) == 0);

  zsl_selection* l21 = nullptr;
  REQUIRE(zsl_l21_fit(x, ys, nullptr, &l21) == ZSL_OK);
  CHECK(zsl_selection_dim(l21) == 12);
  CHECK(zsl_selection_trace_len(l21) >= 1);
  std::vector<int32_t> r1(12), r2(12);
  REQUIRE(zsl_selection_ranking(ridge, r1.data(), 12) == ZSL_OK);
  REQUIRE(zsl_selection_ranking(l21, r2.data(), 12) == ZSL_OK);
  CHECK(is_permutation_of_range(r1));
  CHECK(is_permutation_of_range(r2));

  int32_t pick_a[5], pick_b[5];
  REQUIRE(zsl_random_select(12, 5, 9, pick_a) == ZSL_OK);
  REQUIRE(zsl_random_select(12, 5, 9, pick_b) == ZSL_OK);
  for (int i = 0; i < 5; ++i) CHECK(pick_a[i] == pick_b[i]);
  std::set<int32_t> distinct(pick_a, pick_a + 5);
  CHECK(distinct.size() == 5);
  CHECK(zsl_random_select(12, 13, 9, pick_a) == ZSL_ERR_INVALID);

  zsl_selection_free(ridge);
  zsl_selection_free(l21);
  zsl_matrix_free(ys);
  zsl_matrix_free(x);
  zsl_labels_free(labels);
  zsl_matrix_free(attrs);
  zsl_dataset_free(ds);
}

TEST_CASE("trace CSV is for iteration histories with step counts") {
  zsl_dataset* ds = small_dataset();
  zsl_matrix* x = nullptr;
  zsl_labels* labels = nullptr;
  zsl_matrix* attrs = nullptr;
  REQUIRE(zsl_dataset_seen(ds, &x, &labels, &attrs) == ZSL_OK);

  TempDir tmp;
  zsl_selection* sel = nullptr;
  REQUIRE(zsl_semfs_fit(x, labels, attrs, nullptr, &sel) == ZSL_OK);
  REQUIRE(zsl_selection_save_trace_csv(sel, tmp.file("trace.csv").c_str()) == ZSL_OK);
  const std::string csv = read_file(tmp.file("trace.csv"));
  CHECK(csv.find("iteration,objective,decrease,pgd_steps_accepted") == 0);

  zsl_matrix* ys = nullptr;
  REQUIRE(zsl_expand_semantic_labels(labels, attrs, &ys) == ZSL_OK);
  zsl_selection* l21 = nullptr;
  REQUIRE(zsl_l21_fit(x, ys, nullptr, &l21) == ZSL_OK);
  CHECK(zsl_selection_save_trace_csv(l21, tmp.file("t2.csv").c_str()) == ZSL_ERR_INVALID);

  zsl_selection_free(sel);
  zsl_selection_free(l21);
  zsl_matrix_free(ys);
  zsl_matrix_free(x);
  zsl_labels_free(labels);
  zsl_matrix_free(attrs);
  zsl_dataset_free(ds);
}

TEST_CASE("kmeans and partition metrics work through the C surface") {
  // two tight blobs far apart
  const double data[8] = {0.0, 0.0, 0.1, 0.0, 50.0, 50.0, 50.1, 50.0};
  zsl_matrix* x = nullptr;
  REQUIRE(zsl_matrix_create(data, 4, 2, &x) == ZSL_OK);
  int32_t assignments[4] = {-1, -1, -1, -1};
  double inertia = -1.0;
  REQUIRE(zsl_kmeans(x, 2, 3, 100, assignments, &inertia) == ZSL_OK);
  CHECK(assignments[0] == assignments[1]);
  CHECK(assignments[2] == assignments[3]);
  CHECK(assignments[0] != assignments[2]);
  CHECK(inertia >= 0.0);

  const int32_t truth[4] = {0, 0, 1, 1};
  double acc = 0.0, mi = 0.0;
  REQUIRE(zsl_clustering_accuracy(assignments, truth, 4, &acc) == ZSL_OK);
  CHECK(acc == 1.0);
  REQUIRE(zsl_nmi(assignments, truth, 4, &mi) == ZSL_OK);
  CHECK(mi == doctest::Approx(1.0).epsilon(1e-12));

  const int32_t p2[4] = {0, 0, 1, 1};
  const int32_t t2[4] = {0, 1, 1, 1};
  REQUIRE(zsl_clustering_accuracy(p2, t2, 4, &acc) == ZSL_OK);
  CHECK(acc == 0.75);

  CHECK(zsl_kmeans(x, 0, 3, 100, assignments, nullptr) == ZSL_ERR_INVALID);
  zsl_matrix_free(x);
}

TEST_CASE("synthetic dataset handles expose both splits and the answer key") {
  zsl_dataset* ds = small_dataset();
  zsl_matrix* sx = nullptr;
  zsl_labels* sl = nullptr;
  REQUIRE(zsl_dataset_seen(ds, &sx, &sl, nullptr) == ZSL_OK);
  CHECK(zsl_matrix_rows(sx) == 60);
  CHECK(zsl_matrix_cols(sx) == 12);
  CHECK(zsl_labels_count(sl) == 60);
  CHECK(zsl_labels_num_classes(sl) == 3);

  int64_t n_info = 0;
  REQUIRE(zsl_dataset_informative(ds, nullptr, 0, &n_info) == ZSL_OK);
  REQUIRE(n_info == 3);
  std::vector<int32_t> info(3, -1);
  REQUIRE(zsl_dataset_informative(ds, info.data(), 3, nullptr) == ZSL_OK);
  for (int32_t f : info) CHECK((f >= 0 && f < 12));
  CHECK(std::is_sorted(info.begin(), info.end()));

  TempDir tmp;
  REQUIRE(zsl_dataset_save(ds, tmp.file("out").c_str()) == ZSL_OK);
  for (const char* name : {"seen_features.csv", "seen_labels.txt", "seen_attrs.csv",
                           "unseen_features.csv", "unseen_labels.txt", "unseen_attrs.csv",
                           "manifest.txt"})
    CHECK(fs::exists(tmp.path / "out" / name));

  zsl_synth_params bad;
  zsl_synth_params_init(&bad);
  zsl_dataset* none = nullptr;
  CHECK(zsl_synth_generate(&bad, 1, &none) == ZSL_ERR_INVALID);

  zsl_matrix_free(sx);
  zsl_labels_free(sl);
  zsl_dataset_free(ds);
}

TEST_CASE("ranking report save and load round trip with headers") {
  TempDir tmp;
  const int32_t ranking[4] = {3, 0, 2, 1};
  const char* keys[2] = {"method", "alpha"};
  const char* values[2] = {"semfs", "1"};
  REQUIRE(zsl_save_ranking_report(tmp.file("r.txt").c_str(), ranking, 4, keys, values, 2) ==
          ZSL_OK);

  zsl_ranking* r = nullptr;
  REQUIRE(zsl_ranking_load(tmp.file("r.txt").c_str(), &r) == ZSL_OK);
  REQUIRE(zsl_ranking_length(r) == 4);
  int32_t back[4] = {0};
  REQUIRE(zsl_ranking_indices(r, back, 4) == ZSL_OK);
  for (int i = 0; i < 4; ++i) CHECK(back[i] == ranking[i]);
  REQUIRE(zsl_ranking_header_count(r) == 2);
  CHECK(std::string(zsl_ranking_header_key(r, 0)) == "method");
  CHECK(std::string(zsl_ranking_header_value(r, 0)) == "semfs");
  CHECK(std::string(zsl_ranking_header_key(r, 1)) == "alpha");
  CHECK(std::string(zsl_ranking_header_value(r, 1)) == "1");
  CHECK(zsl_ranking_header_key(r, 2) == nullptr);
  zsl_ranking_free(r);

  zsl_ranking* none = nullptr;
  CHECK(zsl_ranking_load(tmp.file("absent.txt").c_str(), &none) == ZSL_ERR_IO);
}

TEST_CASE("manifest writer emits key=value lines") {
  TempDir tmp;
  const char* keys[2] = {"seed", "method"};
  const char* values[2] = {"42", "ridge"};
  REQUIRE(zsl_save_manifest(keys, values, 2, tmp.file("m.txt").c_str()) == ZSL_OK);
  CHECK(read_file(tmp.file("m.txt")) == "seed=42\nmethod=ridge\n");
  CHECK(zsl_save_manifest(nullptr, nullptr, 2, tmp.file("m2.txt").c_str()) ==
        ZSL_ERR_INVALID);
}

TEST_CASE("format_double matches the library's file format") {
  char buf[32];
  REQUIRE(zsl_format_double(0.1, buf, 32) == ZSL_OK);
  CHECK(std::string(buf) == "0.10000000000000001");
  REQUIRE(zsl_format_double(1.0, buf, 32) == ZSL_OK);
  CHECK(std::string(buf) == "1");
  CHECK(zsl_format_double(0.1, buf, 4) == ZSL_ERR_INVALID);
}

TEST_CASE("default sweep counts come back through the query pattern") {
  int64_t n = 0;
  REQUIRE(zsl_default_sweep_counts(nullptr, 0, &n) == ZSL_OK);
  REQUIRE(n == 10);
  std::vector<int32_t> counts(static_cast<std::size_t>(n), 0);
  REQUIRE(zsl_default_sweep_counts(counts.data(), n, nullptr) == ZSL_OK);
  CHECK(counts.front() == 5);
  CHECK(counts.back() == 50);
}

TEST_CASE("subsampling keeps every class alive") {
  zsl_dataset* ds = small_dataset();
  zsl_matrix* x = nullptr;
  zsl_labels* labels = nullptr;
  REQUIRE(zsl_dataset_seen(ds, &x, &labels, nullptr) == ZSL_OK);

  zsl_matrix* sub_x = nullptr;
  zsl_labels* sub_labels = nullptr;
  int32_t floored = -1;
  REQUIRE(zsl_subsample_labeled_ratio(x, labels, 0.5, 11, &sub_x, &sub_labels, &floored) ==
          ZSL_OK);
  CHECK(zsl_matrix_rows(sub_x) == 30);
  CHECK(zsl_labels_num_classes(sub_labels) == 3);
  CHECK(floored == 0);

  zsl_matrix* tiny_x = nullptr;
  zsl_labels* tiny_labels = nullptr;
  REQUIRE(zsl_subsample_labeled_ratio(x, labels, 0.01, 11, &tiny_x, &tiny_labels, &floored) ==
          ZSL_OK);
  CHECK(zsl_labels_count(tiny_labels) == 3);
  CHECK(floored == 3);

  zsl_matrix_free(sub_x);
  zsl_labels_free(sub_labels);
  zsl_matrix_free(tiny_x);
  zsl_labels_free(tiny_labels);
  zsl_matrix_free(x);
  zsl_labels_free(labels);
  zsl_dataset_free(ds);
}
