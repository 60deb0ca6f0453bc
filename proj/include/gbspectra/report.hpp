#pragma once

#include <string>
#include <vector>

namespace gbspectra {

/// One row of the verification report. `space` is the section-space label
/// ("poly", "trig", "hyp"), `mode` the refinement label ("-" for poly).
/// Numeric fields that do not apply to a check are recorded as 0.
struct ReportRow {
  std::string check;
  int p = 0;
  std::string space;
  double alpha = 0.0;
  std::string mode;
  int n = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  double ms = 0.0;
};

/// Sort rows by (check, p, space, alpha, mode, n, beta, gamma) so the report
/// is deterministic regardless of execution order.
void sort_rows(std::vector<ReportRow>& rows);

/// CSV with header `check,p,space,alpha,mode,n,beta,gamma,measured,bound,pass,ms`;
/// floats printed with %.12g, pass as 1/0. Rows are written as given —
/// call sort_rows first.
void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows);
std::vector<ReportRow> read_report_csv(const std::string& path);

/// JSON summary {"total": {"cases","passed","failed"}, "checks": {name:
/// {"cases","passed","failed"}}} where rows aggregate under their top-level
/// check name (text before the first '.'). Serialized with sorted keys and
/// 2-space indent so equal inputs give byte-identical files.
void write_summary_json(const std::string& path, const std::vector<ReportRow>& rows);

}  // namespace gbspectra
