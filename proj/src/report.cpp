#include "zerosel/report.hpp"

#include <fstream>
#include <stdexcept>

#include "zerosel/errors.hpp"
#include "zerosel/format.hpp"

namespace zerosel {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path + ": cannot open file for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path + ": cannot open file");
  return in;
}

std::string chomp(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

void save_ranking_report(const std::string& path, const std::vector<int>& ranking,
                         const std::vector<std::pair<std::string, std::string>>& header) {
  auto out = open_out(path);
  for (const auto& [k, v] : header) out << "# " << k << '=' << v << '\n';
  for (int idx : ranking) out << idx << '\n';
  if (!out) throw io_error(path + ": write failed");
}

RankingReport load_ranking_report(const std::string& path) {
  auto in = open_in(path);
  RankingReport rep;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = chomp(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      const auto pos = body.find('=');
      if (pos == std::string::npos)
        throw parse_error(path + ": header line without '=' at line " + std::to_string(lineno));
      rep.header.emplace_back(body.substr(0, pos), body.substr(pos + 1));
      continue;
    }
    long long v = 0;
    if (!parse_int64(line.data(), line.data() + line.size(), v) || v < 0)
      throw parse_error(path + ": invalid feature index '" + line + "' at line " +
                        std::to_string(lineno));
    rep.ranking.push_back(static_cast<int>(v));
  }
  if (rep.ranking.empty()) throw parse_error(path + ": no ranked indices");
  return rep;
}

void save_trace_csv(const std::string& path, const std::vector<double>& objective_trace,
                    const std::vector<int>& pgd_steps) {
  if (objective_trace.empty())
    throw std::invalid_argument("save_trace_csv: empty objective trace");
  if (pgd_steps.size() + 1 != objective_trace.size())
    throw std::invalid_argument("save_trace_csv: need one pgd step count per iteration");
  auto out = open_out(path);
  out << "iteration,objective,decrease,pgd_steps_accepted\n";
  for (std::size_t i = 0; i < objective_trace.size(); ++i) {
    const double decrease = i == 0 ? 0.0 : objective_trace[i - 1] - objective_trace[i];
    const int steps = i == 0 ? 0 : pgd_steps[i - 1];
    out << i << ',' << format_double(objective_trace[i]) << ',' << format_double(decrease) << ','
        << steps << '\n';
  }
  if (!out) throw io_error(path + ": write failed");
}

void save_sweep_csv(const std::string& path, const std::vector<EvalReport>& reports) {
  auto out = open_out(path);
  out << "k_features,acc_mean,acc_sd,nmi_mean,nmi_sd,repeats\n";
  for (const auto& r : reports) {
    out << r.k_features << ',' << format_double(r.acc_mean) << ',' << format_double(r.acc_sd)
        << ',' << format_double(r.nmi_mean) << ',' << format_double(r.nmi_sd) << ',' << r.repeats
        << '\n';
  }
  if (!out) throw io_error(path + ": write failed");
}

std::vector<EvalReport> load_sweep_csv(const std::string& path) {
  auto in = open_in(path);
  std::string raw;
  if (!std::getline(in, raw)) throw parse_error(path + ": empty file");
  if (chomp(raw) != "k_features,acc_mean,acc_sd,nmi_mean,nmi_sd,repeats")
    throw parse_error(path + ": unexpected header: " + chomp(raw));
  std::vector<EvalReport> reports;
  std::size_t lineno = 1;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = chomp(raw);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string::size_type start = 0;
    for (;;) {
      const auto pos = line.find(',', start);
      if (pos == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (cells.size() != 6)
      throw parse_error(path + ": expected 6 columns at line " + std::to_string(lineno));
    EvalReport r;
    long long k = 0, reps = 0;
    double vals[4];
    bool ok = parse_int64(cells[0].data(), cells[0].data() + cells[0].size(), k) &&
              parse_int64(cells[5].data(), cells[5].data() + cells[5].size(), reps);
    for (int i = 0; i < 4; ++i)
      ok = ok && parse_double(cells[static_cast<std::size_t>(i + 1)].data(),
                              cells[static_cast<std::size_t>(i + 1)].data() +
                                  cells[static_cast<std::size_t>(i + 1)].size(),
                              vals[i]);
    if (!ok) throw parse_error(path + ": invalid row at line " + std::to_string(lineno));
    r.k_features = static_cast<int>(k);
    r.acc_mean = vals[0];
    r.acc_sd = vals[1];
    r.nmi_mean = vals[2];
    r.nmi_sd = vals[3];
    r.repeats = static_cast<int>(reps);
    reports.push_back(r);
  }
  return reports;
}

}  // namespace zerosel
