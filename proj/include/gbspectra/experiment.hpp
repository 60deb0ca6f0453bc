#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gbspectra/report.hpp"
#include "gbspectra/section_space.hpp"

namespace gbspectra {

/// Names of all verification checks, in canonical order.
const std::vector<std::string>& all_check_names();

/// A full verification campaign. Defaults reproduce the standard sweep:
/// degrees 2 and 3, n in {16,32,64}, the four generalized section spaces at
/// alpha = 1 plus the polynomial space, beta = gamma = 1, 2D runs on
/// n1 in {8,16,24} with aspect ratios nu in {1,2}.
struct ExperimentConfig {
  std::vector<int> p_list = {2, 3};
  std::vector<int> n_list = {16, 32, 64};
  std::vector<int> n1_list = {8, 16, 24};
  std::vector<SectionSpace> spaces;  ///< filled by make_default_config
  double beta = 1.0;
  double gamma = 1.0;
  std::vector<double> nu_list = {1.0, 2.0};
  /// Degree pair (p1, p2) for the 2D checks; unset means (p, p) per p_list.
  std::optional<std::pair<int, int>> p_pair;
  std::vector<std::string> checks;  ///< subset of all_check_names(); empty = all
  std::string out_dir = "out";
  std::uint64_t seed = 0x5EED;
  int jobs = 1;
  /// check-name -> tolerance override (applied where a check consults one).
  std::map<std::string, double> tol_overrides;
};

/// Config with the default space roster: poly, trig & hyp nested, trig & hyp
/// non-nested, all at alpha = 1.
ExperimentConfig make_default_config();

/// Parse an INI-like key=value file ('#' comments, blank lines ignored).
/// Keys: p_list, n_list, n1_list, spaces (comma-separated space specs),
/// beta, gamma, nu_list, p_pair (e.g. "2,3"), checks, out_dir, seed, jobs,
/// tol.<check> = <value>. Unknown keys or check names raise
/// std::invalid_argument naming the offender. List values are
/// comma-separated. Trigonometric phase constraints are validated against
/// the n-grids up front.
ExperimentConfig parse_config_file(const std::string& path);

/// Validate cross-field consistency (spaces vs n-grids, known check names).
/// Throws std::invalid_argument on the first violation.
void validate_config(const ExperimentConfig& config);

struct ExperimentResult {
  std::vector<ReportRow> rows;
  int failed = 0;
  double total_ms = 0.0;
};

/// Run the selected checks over the configured grids, write
/// <out_dir>/report.csv and <out_dir>/summary.json, and return the rows.
/// With jobs > 1 the independent cases run on a thread pool; rows are
/// sorted afterwards so the report does not depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace gbspectra
