// Command-line front end for the zerosel library. Talks to the library
// exclusively through the C interface in zerosel.h, the same surface other
// language bindings would use.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "zerosel.h"

namespace {

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  std::exit(1);
}

void check(int rc) {
  if (rc != ZSL_OK) die(zsl_last_error());
}

std::string fmt(double v) {
  char buf[40];
  check(zsl_format_double(v, buf, sizeof buf));
  return buf;
}

struct MatrixDel {
  void operator()(zsl_matrix* p) const { zsl_matrix_free(p); }
};
struct LabelsDel {
  void operator()(zsl_labels* p) const { zsl_labels_free(p); }
};
struct SelectionDel {
  void operator()(zsl_selection* p) const { zsl_selection_free(p); }
};
struct DatasetDel {
  void operator()(zsl_dataset* p) const { zsl_dataset_free(p); }
};
struct RankingDel {
  void operator()(zsl_ranking* p) const { zsl_ranking_free(p); }
};
using matrix_ptr = std::unique_ptr<zsl_matrix, MatrixDel>;
using labels_ptr = std::unique_ptr<zsl_labels, LabelsDel>;
using selection_ptr = std::unique_ptr<zsl_selection, SelectionDel>;
using dataset_ptr = std::unique_ptr<zsl_dataset, DatasetDel>;
using ranking_ptr = std::unique_ptr<zsl_ranking, RankingDel>;

using Manifest = std::vector<std::pair<std::string, std::string>>;

void write_manifest(const Manifest& entries, const std::string& path) {
  std::vector<const char*> keys, values;
  keys.reserve(entries.size());
  values.reserve(entries.size());
  for (const auto& [k, v] : entries) {
    keys.push_back(k.c_str());
    values.push_back(v.c_str());
  }
  check(zsl_save_manifest(keys.data(), values.data(),
                          static_cast<int64_t>(entries.size()), path.c_str()));
}

matrix_ptr load_features(const std::string& path, bool standardize) {
  zsl_matrix* raw = nullptr;
  check(zsl_matrix_load(path.c_str(), &raw));
  matrix_ptr m(raw);
  if (standardize) {
    zsl_matrix* z = nullptr;
    check(zsl_standardize_columns(m.get(), &z));
    m.reset(z);
  }
  return m;
}

labels_ptr load_labels(const std::string& path) {
  zsl_labels* l = nullptr;
  check(zsl_labels_load(path.c_str(), &l));
  return labels_ptr(l);
}

// The class attribute table the chosen supervision mode feeds the selector:
// the file's rows, or a one-hot identity built from the class count.
matrix_ptr attrs_for(const std::string& supervision, const std::string& attrs_path,
                     zsl_labels* labels) {
  zsl_matrix* a = nullptr;
  if (supervision == "class_labels") {
    check(zsl_one_hot_attributes(zsl_labels_num_classes(labels), &a));
  } else {
    if (attrs_path.empty()) die("--attrs is required with attribute supervision");
    check(zsl_attribute_table_load(attrs_path.c_str(), zsl_labels_num_classes(labels), &a));
  }
  return matrix_ptr(a);
}

struct FitOutcome {
  std::vector<int32_t> ranking;
  selection_ptr sel;  // null for the random selector
};

FitOutcome fit_method(const std::string& method, zsl_matrix* x, zsl_labels* labels,
                      zsl_matrix* attrs, double alpha, double gamma, uint64_t seed) {
  const int64_t d = zsl_matrix_cols(x);
  FitOutcome out;
  out.ranking.resize(static_cast<std::size_t>(d));
  if (method == "random") {
    check(zsl_random_select(static_cast<int32_t>(d), static_cast<int32_t>(d), seed,
                            out.ranking.data()));
    return out;
  }
  zsl_selection* sel = nullptr;
  if (method == "semfs" || method == "semfs_c") {
    zsl_semfs_config cfg;
    zsl_semfs_config_init(&cfg);
    cfg.alpha = method == "semfs_c" ? 0.0 : alpha;
    cfg.gamma = gamma;
    check(zsl_semfs_fit(x, labels, attrs, &cfg, &sel));
  } else {
    zsl_matrix* ys_raw = nullptr;
    check(zsl_expand_semantic_labels(labels, attrs, &ys_raw));
    matrix_ptr ys(ys_raw);
    if (method == "l21") {
      zsl_l21_config cfg;
      zsl_l21_config_init(&cfg);
      cfg.gamma = gamma;
      check(zsl_l21_fit(x, ys.get(), &cfg, &sel));
    } else {
      check(zsl_ridge_fit(x, ys.get(), gamma, &sel));
    }
  }
  out.sel.reset(sel);
  check(zsl_selection_ranking(sel, out.ranking.data(), d));
  return out;
}

// Shared option bag; each subcommand registers the subset it understands.
struct Options {
  std::string features, labels, attrs;
  std::string unseen_features, unseen_labels;
  std::string ranking_path;
  std::string method = "semfs";
  std::string supervision = "attributes";
  double alpha = 1.0;
  double gamma = 0.1;
  int k = 10;
  int repeats = 20;
  uint64_t seed = 0;
  std::vector<int> counts;
  bool standardize = false;
  std::string out;
  std::string manifest;

  int n_seen = 200, n_unseen = 100, d = 50, m = 8, c_seen = 5, c_unseen = 4, k_info = 6;
  double attr_noise_sd = 0.0, feature_noise_sd = 0.1;
};

std::vector<int32_t> resolved_counts(const Options& opt) {
  if (!opt.counts.empty()) return std::vector<int32_t>(opt.counts.begin(), opt.counts.end());
  int64_t n = 0;
  check(zsl_default_sweep_counts(nullptr, 0, &n));
  std::vector<int32_t> counts(static_cast<std::size_t>(n));
  check(zsl_default_sweep_counts(counts.data(), n, nullptr));
  return counts;
}

std::string join_counts(const std::vector<int32_t>& counts) {
  std::string text;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i > 0) text += ',';
    text += std::to_string(counts[i]);
  }
  return text;
}

void append_common(Manifest& man, const Options& opt, const char* command) {
  man.emplace_back("command", command);
  man.emplace_back("seed", std::to_string(opt.seed));
  man.emplace_back("out", opt.out);
}

// Ranking for evaluate/sweep/compare: either read from a report file or fit
// the configured method on the seen split. Fills `header` with the
// provenance entries worth recording.
std::vector<int32_t> obtain_ranking(const Options& opt, Manifest& header) {
  if (!opt.ranking_path.empty()) {
    zsl_ranking* raw = nullptr;
    check(zsl_ranking_load(opt.ranking_path.c_str(), &raw));
    ranking_ptr r(raw);
    std::vector<int32_t> ranking(static_cast<std::size_t>(zsl_ranking_length(r.get())));
    check(zsl_ranking_indices(r.get(), ranking.data(),
                              static_cast<int64_t>(ranking.size())));
    header.emplace_back("ranking", opt.ranking_path);
    return ranking;
  }
  if (opt.features.empty() || opt.labels.empty())
    die("need --ranking, or --features and --labels to fit " + opt.method);
  matrix_ptr x = load_features(opt.features, opt.standardize);
  labels_ptr labels = load_labels(opt.labels);
  matrix_ptr attrs = attrs_for(opt.supervision, opt.attrs, labels.get());
  FitOutcome fit = fit_method(opt.method, x.get(), labels.get(), attrs.get(), opt.alpha,
                              opt.gamma, opt.seed);
  header.emplace_back("method", opt.method);
  header.emplace_back("supervision", opt.supervision);
  return std::move(fit.ranking);
}

int cmd_synth(const Options& opt) {
  zsl_synth_params p;
  zsl_synth_params_init(&p);
  p.n_seen = opt.n_seen;
  p.n_unseen = opt.n_unseen;
  p.d = opt.d;
  p.m = opt.m;
  p.c_seen = opt.c_seen;
  p.c_unseen = opt.c_unseen;
  p.k_info = opt.k_info;
  p.attr_noise_sd = opt.attr_noise_sd;
  p.feature_noise_sd = opt.feature_noise_sd;
  zsl_dataset* raw = nullptr;
  check(zsl_synth_generate(&p, opt.seed, &raw));
  dataset_ptr ds(raw);
  check(zsl_dataset_save(ds.get(), opt.out.c_str()));
  if (!opt.manifest.empty()) {
    Manifest man;
    append_common(man, opt, "synth");
    man.emplace_back("n_seen", std::to_string(p.n_seen));
    man.emplace_back("n_unseen", std::to_string(p.n_unseen));
    man.emplace_back("d", std::to_string(p.d));
    man.emplace_back("m", std::to_string(p.m));
    man.emplace_back("c_seen", std::to_string(p.c_seen));
    man.emplace_back("c_unseen", std::to_string(p.c_unseen));
    man.emplace_back("k_info", std::to_string(p.k_info));
    man.emplace_back("attr_noise_sd", fmt(p.attr_noise_sd));
    man.emplace_back("feature_noise_sd", fmt(p.feature_noise_sd));
    write_manifest(man, opt.manifest);
  }
  return 0;
}

int cmd_select(const Options& opt) {
  matrix_ptr x = load_features(opt.features, opt.standardize);
  labels_ptr labels = load_labels(opt.labels);
  matrix_ptr attrs = attrs_for(opt.supervision, opt.attrs, labels.get());
  FitOutcome fit = fit_method(opt.method, x.get(), labels.get(), attrs.get(), opt.alpha,
                              opt.gamma, opt.seed);

  Manifest header;
  header.emplace_back("method", opt.method);
  header.emplace_back("supervision", opt.supervision);
  if (opt.method == "semfs" || opt.method == "semfs_c")
    header.emplace_back("alpha", fmt(opt.method == "semfs_c" ? 0.0 : opt.alpha));
  if (opt.method != "random") header.emplace_back("gamma", fmt(opt.gamma));
  header.emplace_back("seed", std::to_string(opt.seed));
  header.emplace_back("standardize", opt.standardize ? "1" : "0");
  header.emplace_back("n", std::to_string(zsl_matrix_rows(x.get())));
  header.emplace_back("d", std::to_string(zsl_matrix_cols(x.get())));
  if (fit.sel != nullptr) {
    header.emplace_back("iterations", std::to_string(zsl_selection_iterations(fit.sel.get())));
    header.emplace_back("converged",
                        zsl_selection_converged(fit.sel.get()) == 1 ? "1" : "0");
  }

  std::vector<const char*> keys, values;
  for (const auto& [k, v] : header) {
    keys.push_back(k.c_str());
    values.push_back(v.c_str());
  }
  check(zsl_save_ranking_report(opt.out.c_str(), fit.ranking.data(),
                                static_cast<int64_t>(fit.ranking.size()), keys.data(),
                                values.data(), static_cast<int64_t>(header.size())));
  if (opt.method == "semfs" || opt.method == "semfs_c")
    check(zsl_selection_save_trace_csv(fit.sel.get(), (opt.out + ".trace.csv").c_str()));

  if (!opt.manifest.empty()) {
    Manifest man;
    append_common(man, opt, "select");
    man.emplace_back("features", opt.features);
    man.emplace_back("labels", opt.labels);
    if (!opt.attrs.empty()) man.emplace_back("attrs", opt.attrs);
    man.emplace_back("method", opt.method);
    man.emplace_back("supervision", opt.supervision);
    man.emplace_back("alpha", fmt(opt.alpha));
    man.emplace_back("gamma", fmt(opt.gamma));
    man.emplace_back("standardize", opt.standardize ? "1" : "0");
    write_manifest(man, opt.manifest);
  }
  return 0;
}

int cmd_evaluate(const Options& opt) {
  Manifest provenance;
  const std::vector<int32_t> ranking = obtain_ranking(opt, provenance);
  if (opt.k < 1 || opt.k > static_cast<int>(ranking.size()))
    die("--k must be between 1 and the ranking length " + std::to_string(ranking.size()));
  matrix_ptr x = load_features(opt.unseen_features, opt.standardize);
  labels_ptr labels = load_labels(opt.unseen_labels);

  zsl_eval_report report;
  check(zsl_evaluate_selection(x.get(), labels.get(), ranking.data(), opt.k, opt.repeats,
                               opt.seed, &report));
  check(zsl_save_sweep_csv(opt.out.c_str(), &report, 1));

  if (!opt.manifest.empty()) {
    Manifest man;
    append_common(man, opt, "evaluate");
    for (auto& entry : provenance) man.push_back(entry);
    man.emplace_back("unseen_features", opt.unseen_features);
    man.emplace_back("unseen_labels", opt.unseen_labels);
    man.emplace_back("k", std::to_string(opt.k));
    man.emplace_back("repeats", std::to_string(opt.repeats));
    man.emplace_back("standardize", opt.standardize ? "1" : "0");
    write_manifest(man, opt.manifest);
  }
  return 0;
}

int cmd_sweep(const Options& opt) {
  Manifest provenance;
  const std::vector<int32_t> ranking = obtain_ranking(opt, provenance);
  matrix_ptr x = load_features(opt.unseen_features, opt.standardize);
  labels_ptr labels = load_labels(opt.unseen_labels);
  const std::vector<int32_t> counts = resolved_counts(opt);

  std::vector<zsl_eval_report> rows(counts.size());
  int64_t written = 0;
  check(zsl_sweep_feature_counts(x.get(), labels.get(), ranking.data(),
                                 static_cast<int64_t>(ranking.size()), counts.data(),
                                 static_cast<int64_t>(counts.size()), opt.repeats, opt.seed,
                                 rows.data(), static_cast<int64_t>(rows.size()), &written));
  check(zsl_save_sweep_csv(opt.out.c_str(), rows.data(), written));

  if (!opt.manifest.empty()) {
    Manifest man;
    append_common(man, opt, "sweep");
    for (auto& entry : provenance) man.push_back(entry);
    man.emplace_back("unseen_features", opt.unseen_features);
    man.emplace_back("unseen_labels", opt.unseen_labels);
    man.emplace_back("counts", join_counts(counts));
    man.emplace_back("repeats", std::to_string(opt.repeats));
    man.emplace_back("standardize", opt.standardize ? "1" : "0");
    write_manifest(man, opt.manifest);
  }
  return 0;
}

int cmd_compare(const Options& opt) {
  matrix_ptr seen_x = load_features(opt.features, opt.standardize);
  labels_ptr seen_labels = load_labels(opt.labels);
  matrix_ptr unseen_x = load_features(opt.unseen_features, opt.standardize);
  labels_ptr unseen_labels = load_labels(opt.unseen_labels);
  const std::vector<int32_t> counts = resolved_counts(opt);

  std::vector<std::string> modes;
  if (opt.supervision == "attributes" || opt.supervision == "class_labels")
    modes.push_back(opt.supervision);
  if (opt.supervision == "both") modes = {"attributes", "class_labels"};

  std::ofstream out(opt.out, std::ios::binary);
  if (!out) die(opt.out + ": cannot open for writing");
  out << "method,supervision,ratio,k_features,acc_mean,nmi_mean\n";

  for (int ratio_idx = 1; ratio_idx <= 10; ++ratio_idx) {
    const double ratio = static_cast<double>(ratio_idx) / 10.0;
    const std::string ratio_text =
        ratio_idx == 10 ? "1" : "0." + std::to_string(ratio_idx);
    zsl_matrix* sub_x_raw = nullptr;
    zsl_labels* sub_labels_raw = nullptr;
    int32_t floored = 0;
    check(zsl_subsample_labeled_ratio(seen_x.get(), seen_labels.get(), ratio,
                                      opt.seed + static_cast<uint64_t>(ratio_idx),
                                      &sub_x_raw, &sub_labels_raw, &floored));
    matrix_ptr sub_x(sub_x_raw);
    labels_ptr sub_labels(sub_labels_raw);
    if (floored > 0)
      std::cerr << "note: ratio " << ratio_text << " kept " << floored
                << " class(es) at the single-instance floor\n";

    for (const std::string& mode : modes) {
      matrix_ptr attrs = attrs_for(mode, opt.attrs, sub_labels.get());
      FitOutcome fit = fit_method(opt.method, sub_x.get(), sub_labels.get(), attrs.get(),
                                  opt.alpha, opt.gamma, opt.seed);
      std::vector<zsl_eval_report> rows(counts.size());
      int64_t written = 0;
      check(zsl_sweep_feature_counts(unseen_x.get(), unseen_labels.get(),
                                     fit.ranking.data(),
                                     static_cast<int64_t>(fit.ranking.size()), counts.data(),
                                     static_cast<int64_t>(counts.size()), opt.repeats,
                                     opt.seed, rows.data(),
                                     static_cast<int64_t>(rows.size()), &written));
      for (int64_t i = 0; i < written; ++i) {
        out << opt.method << ',' << mode << ',' << ratio_text << ','
            << rows[static_cast<std::size_t>(i)].k_features << ','
            << fmt(rows[static_cast<std::size_t>(i)].acc_mean) << ','
            << fmt(rows[static_cast<std::size_t>(i)].nmi_mean) << '\n';
      }
    }
  }
  out.flush();
  if (!out) die(opt.out + ": write failed");
  out.close();

  if (!opt.manifest.empty()) {
    Manifest man;
    append_common(man, opt, "compare");
    man.emplace_back("features", opt.features);
    man.emplace_back("labels", opt.labels);
    if (!opt.attrs.empty()) man.emplace_back("attrs", opt.attrs);
    man.emplace_back("unseen_features", opt.unseen_features);
    man.emplace_back("unseen_labels", opt.unseen_labels);
    man.emplace_back("method", opt.method);
    man.emplace_back("supervision", opt.supervision);
    man.emplace_back("alpha", fmt(opt.alpha));
    man.emplace_back("gamma", fmt(opt.gamma));
    man.emplace_back("counts", join_counts(counts));
    man.emplace_back("repeats", std::to_string(opt.repeats));
    man.emplace_back("standardize", opt.standardize ? "1" : "0");
    write_manifest(man, opt.manifest);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Attribute-supervised feature selection for zero-shot settings"};
  app.require_subcommand(1);

  const auto method_check =
      CLI::IsMember({"semfs", "semfs_c", "l21", "ridge", "random"});
  const auto supervision_check = CLI::IsMember({"attributes", "class_labels"});

  auto add_fit_flags = [&](CLI::App* cmd) {
    cmd->add_option("--method", opt.method, "Selector: semfs, semfs_c, l21, ridge, random")
        ->check(method_check);
    cmd->add_option("--alpha", opt.alpha, "Weight of the class-center fit term");
    cmd->add_option("--gamma", opt.gamma, "Ridge / row-sparsity penalty weight");
    cmd->add_flag("--standardize", opt.standardize,
                  "Z-score feature columns before fitting and clustering");
  };
  auto add_seen_flags = [&](CLI::App* cmd, bool required) {
    auto* f = cmd->add_option("--features", opt.features, "Seen-split feature CSV");
    auto* l = cmd->add_option("--labels", opt.labels, "Seen-split label file");
    if (required) {
      f->required();
      l->required();
    }
    cmd->add_option("--attrs", opt.attrs, "Class attribute table CSV");
    cmd->add_option("--supervision", opt.supervision,
                    "Supervision signal: attributes or class_labels")
        ->check(supervision_check);
  };
  auto add_unseen_flags = [&](CLI::App* cmd) {
    cmd->add_option("--unseen-features", opt.unseen_features, "Unseen-split feature CSV")
        ->required();
    cmd->add_option("--unseen-labels", opt.unseen_labels, "Unseen-split label file")
        ->required();
  };
  auto add_eval_flags = [&](CLI::App* cmd) {
    cmd->add_option("--ranking", opt.ranking_path,
                    "Ranking report to evaluate (otherwise fits --method on the seen split)");
    cmd->add_option("--repeats", opt.repeats, "Clustering repetitions per setting");
  };

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic zero-shot benchmark");
  synth->add_option("--out", opt.out, "Output directory")->required();
  synth->add_option("--seed", opt.seed, "RNG seed");
  synth->add_option("--n-seen", opt.n_seen, "Seen-split instance count");
  synth->add_option("--n-unseen", opt.n_unseen, "Unseen-split instance count");
  synth->add_option("--d", opt.d, "Feature count");
  synth->add_option("--m", opt.m, "Attribute count");
  synth->add_option("--c-seen", opt.c_seen, "Seen class count");
  synth->add_option("--c-unseen", opt.c_unseen, "Unseen class count");
  synth->add_option("--k-info", opt.k_info, "Informative feature count");
  synth->add_option("--attr-noise-sd", opt.attr_noise_sd, "Attribute perturbation sd");
  synth->add_option("--feature-noise-sd", opt.feature_noise_sd, "Feature noise sd");
  synth->add_option("--manifest", opt.manifest, "Write the resolved configuration here");

  CLI::App* select = app.add_subcommand("select", "Fit a selector and write its ranking");
  add_seen_flags(select, true);
  add_fit_flags(select);
  select->add_option("--seed", opt.seed, "Seed for seeded selectors");
  select->add_option("--out", opt.out, "Ranking report path")->required();
  select->add_option("--manifest", opt.manifest, "Write the resolved configuration here");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score a feature subset by clustering the unseen split");
  add_seen_flags(evaluate, false);
  add_fit_flags(evaluate);
  add_unseen_flags(evaluate);
  add_eval_flags(evaluate);
  evaluate->add_option("--k", opt.k, "Number of top-ranked features to keep");
  evaluate->add_option("--seed", opt.seed, "Base seed for the clustering repeats");
  evaluate->add_option("--out", opt.out, "Result CSV path")->required();
  evaluate->add_option("--manifest", opt.manifest, "Write the resolved configuration here");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Evaluate ranking prefixes across feature counts");
  add_seen_flags(sweep, false);
  add_fit_flags(sweep);
  add_unseen_flags(sweep);
  add_eval_flags(sweep);
  sweep->add_option("--counts", opt.counts, "Feature counts to sweep (default 5,10,...,50)")
      ->delimiter(',');
  sweep->add_option("--seed", opt.seed, "Base seed for the clustering repeats");
  sweep->add_option("--out", opt.out, "Sweep CSV path")->required();
  sweep->add_option("--manifest", opt.manifest, "Write the resolved configuration here");

  CLI::App* compare = app.add_subcommand(
      "compare", "Labeled-ratio grid across supervision modes, one CSV row per setting");
  add_seen_flags(compare, true);
  add_fit_flags(compare);
  add_unseen_flags(compare);
  compare->add_option("--repeats", opt.repeats, "Clustering repetitions per setting");
  compare->add_option("--counts", opt.counts, "Feature counts (default 5,10,...,50)")
      ->delimiter(',');
  compare->add_option("--seed", opt.seed, "Base seed");
  compare->add_option("--out", opt.out, "Comparison CSV path")->required();
  compare->add_option("--manifest", opt.manifest, "Write the resolved configuration here");
  // compare defaults to running both supervision modes
  opt.supervision = "attributes";

  CLI11_PARSE(app, argc, argv);

  if (synth->parsed()) return cmd_synth(opt);
  if (select->parsed()) return cmd_select(opt);
  if (evaluate->parsed()) return cmd_evaluate(opt);
  if (sweep->parsed()) return cmd_sweep(opt);
  if (compare->parsed()) {
    if (compare->count("--supervision") == 0) opt.supervision = "both";
    return cmd_compare(opt);
  }
  return 1;
}
