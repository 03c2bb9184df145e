#include "zerosel/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "zerosel/errors.hpp"
#include "zerosel/format.hpp"
#include "zerosel/rng.hpp"

namespace zerosel {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path + ": cannot open file");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // a trailing newline produces no extra line with getline; an explicitly
  // empty final line is tolerated as the same thing
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(const std::string& line) {
  std::vector<std::string_view> cells;
  std::string_view rest = line;
  for (;;) {
    auto pos = rest.find(',');
    if (pos == std::string_view::npos) {
      cells.push_back(trim(rest));
      break;
    }
    cells.push_back(trim(rest.substr(0, pos)));
    rest.remove_prefix(pos + 1);
  }
  return cells;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path + ": cannot open file for writing");
  return out;
}

}  // namespace

Matrix load_matrix(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw parse_error(path + ": empty file");

  const auto first = split_commas(lines[0]);
  const auto cols = static_cast<Eigen::Index>(first.size());
  Matrix m(static_cast<Eigen::Index>(lines.size()), cols);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto cells = split_commas(lines[r]);
    if (static_cast<Eigen::Index>(cells.size()) != cols) {
      throw parse_error(path + ": ragged row at line " + std::to_string(r + 1) +
                        ": expected " + std::to_string(cols) + " values, got " +
                        std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto cell = cells[c];
      double v = 0.0;
      if (cell.empty() || !parse_double(cell.data(), cell.data() + cell.size(), v)) {
        throw parse_error(path + ": invalid number '" + std::string(cell) + "' at row " +
                          std::to_string(r + 1) + ", column " + std::to_string(c + 1));
      }
      if (!std::isfinite(v)) {
        throw parse_error(path + ": non-finite value '" + std::string(cell) + "' at row " +
                          std::to_string(r + 1) + ", column " + std::to_string(c + 1));
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return m;
}

void save_matrix(const Matrix& m, const std::string& path) {
  auto out = open_out(path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
  if (!out) throw io_error(path + ": write failed");
}

ClassLabels load_labels(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw parse_error(path + ": empty file");
  std::vector<int> values;
  values.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto cell = trim(lines[r]);
    long long v = 0;
    if (cell.empty() || !parse_int64(cell.data(), cell.data() + cell.size(), v)) {
      throw parse_error(path + ": invalid label '" + std::string(cell) + "' at line " +
                        std::to_string(r + 1));
    }
    if (v < 0) {
      throw parse_error(path + ": negative label " + std::to_string(v) + " at line " +
                        std::to_string(r + 1));
    }
    values.push_back(static_cast<int>(v));
  }
  try {
    return make_class_labels(std::move(values));
  } catch (const std::invalid_argument& e) {
    throw parse_error(path + ": " + e.what());
  }
}

void save_labels(const ClassLabels& labels, const std::string& path) {
  auto out = open_out(path);
  for (int v : labels.values) out << v << '\n';
  if (!out) throw io_error(path + ": write failed");
}

Matrix load_attribute_table(const std::string& path, int num_classes) {
  if (num_classes < 1) throw std::invalid_argument("attribute table: class count must be >= 1");
  Matrix m = load_matrix(path);
  if (m.rows() != num_classes) {
    throw parse_error(path + ": attribute table: expected " + std::to_string(num_classes) +
                      " rows, got " + std::to_string(m.rows()));
  }
  return m;
}

Matrix class_attributes_from_instances(const Matrix& instance_attrs, const ClassLabels& labels) {
  if (instance_attrs.rows() != labels.n())
    throw std::invalid_argument("class_attributes_from_instances: row count must match labels");
  Matrix sums = Matrix::Zero(labels.num_classes, instance_attrs.cols());
  for (int i = 0; i < labels.n(); ++i) sums.row(labels.values[i]) += instance_attrs.row(i);
  for (int j = 0; j < labels.num_classes; ++j) {
    int count = 0;
    for (int v : labels.values) count += (v == j);
    sums.row(j) /= static_cast<double>(count);
  }
  return sums;
}

Matrix expand_semantic_labels(const ClassLabels& labels, const Matrix& attrs) {
  if (attrs.rows() != labels.num_classes)
    throw std::invalid_argument("expand_semantic_labels: attribute table has " +
                                std::to_string(attrs.rows()) + " rows for " +
                                std::to_string(labels.num_classes) + " classes");
  Matrix ys(labels.n(), attrs.cols());
  for (int i = 0; i < labels.n(); ++i) ys.row(i) = attrs.row(labels.values[i]);
  return ys;
}

Matrix one_hot_attributes(int num_classes) {
  if (num_classes < 1) throw std::invalid_argument("one_hot_attributes: class count must be >= 1");
  return Matrix::Identity(num_classes, num_classes);
}

ClassCenters compute_class_centers(const Matrix& x, const ClassLabels& labels) {
  if (x.rows() != labels.n())
    throw std::invalid_argument("compute_class_centers: row count must match labels");
  ClassCenters cc;
  cc.centers = Matrix::Zero(labels.num_classes, x.cols());
  cc.counts.assign(static_cast<std::size_t>(labels.num_classes), 0);
  for (int i = 0; i < labels.n(); ++i) {
    cc.centers.row(labels.values[i]) += x.row(i);
    cc.counts[static_cast<std::size_t>(labels.values[i])]++;
  }
  for (int j = 0; j < labels.num_classes; ++j)
    cc.centers.row(j) /= static_cast<double>(cc.counts[static_cast<std::size_t>(j)]);
  return cc;
}

Matrix expand_centers(const ClassCenters& centers, const ClassLabels& labels) {
  if (centers.centers.rows() != labels.num_classes)
    throw std::invalid_argument("expand_centers: " + std::to_string(centers.centers.rows()) +
                                " centers for " + std::to_string(labels.num_classes) + " classes");
  Matrix xbar(labels.n(), centers.centers.cols());
  for (int i = 0; i < labels.n(); ++i) xbar.row(i) = centers.centers.row(labels.values[i]);
  return xbar;
}

namespace {

void validate_synth_params(const SynthParams& p) {
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(std::string("generate_synthetic_zero_shot: ") + msg);
  };
  need(p.d >= 1, "d must be >= 1");
  need(p.m >= 1, "m must be >= 1");
  need(p.c_seen >= 2, "c_seen must be >= 2");
  need(p.c_unseen >= 2, "c_unseen must be >= 2");
  need(p.k_info >= 1 && p.k_info <= p.d, "k_info must be in [1, d]");
  need(p.n_seen >= p.c_seen, "n_seen must be >= c_seen so every class is populated");
  need(p.n_unseen >= p.c_unseen, "n_unseen must be >= c_unseen so every class is populated");
  need(p.attr_noise_sd >= 0.0, "attr_noise_sd must be >= 0");
  need(p.feature_noise_sd >= 0.0, "feature_noise_sd must be >= 0");
}

Matrix draw_normal_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.next_normal();
  return m;
}

std::vector<int> round_robin_labels(int n, int c) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i % c;
  return v;
}

void fill_split(Rng& rng, const Matrix& attrs, const std::vector<int>& labels, const Matrix& g,
                const std::vector<char>& is_informative, const std::vector<int>& info_slot,
                const SynthParams& p, double noise_col_sd, Matrix& x) {
  Eigen::RowVectorXd perturbed(p.m);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (int a = 0; a < p.m; ++a)
      perturbed(a) = attrs(labels[static_cast<std::size_t>(i)], a) +
                     p.attr_noise_sd * rng.next_normal();
    const Eigen::RowVectorXd latent = perturbed * g;
    for (int col = 0; col < p.d; ++col) {
      if (is_informative[static_cast<std::size_t>(col)]) {
        x(i, col) = latent(info_slot[static_cast<std::size_t>(col)]) +
                    p.feature_noise_sd * rng.next_normal();
      } else {
        x(i, col) = noise_col_sd * rng.next_normal();
      }
    }
  }
}

}  // namespace

SyntheticDataset generate_synthetic_zero_shot(const SynthParams& p, std::uint64_t seed) {
  validate_synth_params(p);
  Rng rng(seed);

  SyntheticDataset ds;
  ds.params = p;
  ds.seed = seed;
  ds.seen_attrs = draw_normal_matrix(rng, p.c_seen, p.m);
  ds.unseen_attrs = draw_normal_matrix(rng, p.c_unseen, p.m);
  const Matrix g = draw_normal_matrix(rng, p.m, p.k_info);

  std::vector<int> perm(static_cast<std::size_t>(p.d));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < p.k_info; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p.d - i)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  ds.informative_features.assign(perm.begin(), perm.begin() + p.k_info);
  std::sort(ds.informative_features.begin(), ds.informative_features.end());

  // info_slot maps an informative column to its latent dimension; slots
  // follow ascending column order
  std::vector<char> is_informative(static_cast<std::size_t>(p.d), 0);
  std::vector<int> info_slot(static_cast<std::size_t>(p.d), -1);
  for (std::size_t t = 0; t < ds.informative_features.size(); ++t) {
    is_informative[static_cast<std::size_t>(ds.informative_features[t])] = 1;
    info_slot[static_cast<std::size_t>(ds.informative_features[t])] = static_cast<int>(t);
  }

  const double noise_col_sd =
      std::sqrt(p.m * (1.0 + p.attr_noise_sd * p.attr_noise_sd) +
                p.feature_noise_sd * p.feature_noise_sd);

  ds.seen_labels = make_class_labels(round_robin_labels(p.n_seen, p.c_seen));
  ds.unseen_labels = make_class_labels(round_robin_labels(p.n_unseen, p.c_unseen));
  ds.seen_x.resize(p.n_seen, p.d);
  ds.unseen_x.resize(p.n_unseen, p.d);
  fill_split(rng, ds.seen_attrs, ds.seen_labels.values, g, is_informative, info_slot, p,
             noise_col_sd, ds.seen_x);
  fill_split(rng, ds.unseen_attrs, ds.unseen_labels.values, g, is_informative, info_slot, p,
             noise_col_sd, ds.unseen_x);
  return ds;
}

void save_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                   const std::string& path) {
  auto out = open_out(path);
  for (const auto& [k, v] : entries) out << k << '=' << v << '\n';
  if (!out) throw io_error(path + ": write failed");
}

std::vector<std::pair<std::string, std::string>> load_manifest(const std::string& path) {
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& line : read_lines(path)) {
    const auto pos = line.find('=');
    if (pos == std::string::npos)
      throw parse_error(path + ": manifest line without '=': " + line);
    entries.emplace_back(line.substr(0, pos), line.substr(pos + 1));
  }
  return entries;
}

void save_synthetic_dataset(const SyntheticDataset& ds, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw io_error(dir + ": cannot create directory: " + ec.message());
  const auto join = [&dir](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };
  save_matrix(ds.seen_x, join("seen_features.csv"));
  save_labels(ds.seen_labels, join("seen_labels.txt"));
  save_matrix(ds.seen_attrs, join("seen_attrs.csv"));
  save_matrix(ds.unseen_x, join("unseen_features.csv"));
  save_labels(ds.unseen_labels, join("unseen_labels.txt"));
  save_matrix(ds.unseen_attrs, join("unseen_attrs.csv"));

  std::string info;
  for (std::size_t i = 0; i < ds.informative_features.size(); ++i) {
    if (i) info += ',';
    info += std::to_string(ds.informative_features[i]);
  }
  save_manifest(
      {
          {"seed", std::to_string(ds.seed)},
          {"n_seen", std::to_string(ds.params.n_seen)},
          {"n_unseen", std::to_string(ds.params.n_unseen)},
          {"d", std::to_string(ds.params.d)},
          {"m", std::to_string(ds.params.m)},
          {"c_seen", std::to_string(ds.params.c_seen)},
          {"c_unseen", std::to_string(ds.params.c_unseen)},
          {"k_info", std::to_string(ds.params.k_info)},
          {"attr_noise_sd", format_double(ds.params.attr_noise_sd)},
          {"feature_noise_sd", format_double(ds.params.feature_noise_sd)},
          {"informative_features", info},
      },
      join("manifest.txt"));
}

Matrix select_columns(const Matrix& m, const std::vector<int>& cols) {
  if (cols.empty()) throw std::invalid_argument("select_columns: empty column list");
  Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= m.cols())
      throw std::invalid_argument("select_columns: column index " + std::to_string(cols[j]) +
                                  " out of range for " + std::to_string(m.cols()) + " columns");
    out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
  }
  return out;
}

SubsampleResult subsample_labeled_ratio(const Matrix& x, const ClassLabels& labels, double ratio,
                                        std::uint64_t seed) {
  if (x.rows() != labels.n())
    throw std::invalid_argument("subsample_labeled_ratio: row count must match labels");
  if (!(ratio > 0.0) || ratio > 1.0)
    throw std::invalid_argument("subsample_labeled_ratio: ratio must be in (0, 1]");

  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(labels.num_classes));
  for (int i = 0; i < labels.n(); ++i)
    by_class[static_cast<std::size_t>(labels.values[i])].push_back(i);

  Rng rng(seed);
  SubsampleResult res;
  std::vector<int> keep;
  for (auto& members : by_class) {
    const auto nj = static_cast<double>(members.size());
    // tiny epsilon keeps exact products like 0.2*5 from flooring down
    auto mj = static_cast<int>(std::floor(ratio * nj + 1e-9));
    if (mj == 0) {
      mj = 1;
      res.floored_classes++;
    }
    for (int i = 0; i < mj; ++i) {
      const auto j =
          i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(members.size()) -
                                              static_cast<std::uint64_t>(i)));
      std::swap(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
    }
    keep.insert(keep.end(), members.begin(), members.begin() + mj);
  }
  std::sort(keep.begin(), keep.end());

  res.x.resize(static_cast<Eigen::Index>(keep.size()), x.cols());
  std::vector<int> values;
  values.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    res.x.row(static_cast<Eigen::Index>(i)) = x.row(keep[i]);
    values.push_back(labels.values[static_cast<std::size_t>(keep[i])]);
  }
  res.labels = make_class_labels(std::move(values));
  return res;
}

Matrix standardize_columns(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double mean = m.col(c).mean();
    const double var = (m.col(c).array() - mean).square().sum() / static_cast<double>(m.rows());
    const double sd = std::sqrt(var);
    if (sd > 0.0)
      out.col(c) = (m.col(c).array() - mean) / sd;
    else
      out.col(c).setZero();
  }
  return out;
}

}  // namespace zerosel
