#ifndef ZEROSEL_REPORT_HPP
#define ZEROSEL_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "zerosel/eval.hpp"
#include "zerosel/semfs.hpp"

namespace zerosel {

// Plain-text result files. A ranking report is a block of '# key=value'
// header lines followed by one ranked feature index per line; trace and
// sweep files are headered CSV. All numbers use the 17-significant-digit
// format, so identical runs produce byte-identical files.

struct RankingReport {
  std::vector<int> ranking;
  std::vector<std::pair<std::string, std::string>> header;
};

void save_ranking_report(const std::string& path, const std::vector<int>& ranking,
                         const std::vector<std::pair<std::string, std::string>>& header);
RankingReport load_ranking_report(const std::string& path);

// Columns: iteration, objective, decrease, pgd_steps_accepted. Row 0 is the
// initial objective with zero decrease and zero steps.
void save_trace_csv(const std::string& path, const std::vector<double>& objective_trace,
                    const std::vector<int>& pgd_steps);

// Columns: k_features, acc_mean, acc_sd, nmi_mean, nmi_sd, repeats.
void save_sweep_csv(const std::string& path, const std::vector<EvalReport>& reports);
std::vector<EvalReport> load_sweep_csv(const std::string& path);

}  // namespace zerosel

#endif
