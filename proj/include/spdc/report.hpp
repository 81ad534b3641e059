#pragma once

#include <string>
#include <vector>

#include "spdc/scenario.hpp"

namespace spdc {

struct ReportRow {
  enum class Status { pass, fail, info };
  std::string quantity;
  std::string reference;  // published value this row is checked against
  std::string computed;
  std::string tolerance;
  Status status = Status::info;
};

/// Output of a reproduce run: the pass/fail table plus every CSV artifact,
/// kept in memory so runs are comparable byte-for-byte.
struct ReproduceResult {
  std::vector<ReportRow> rows;
  std::string spectrum_csv;
  std::string jsi_csv;
  std::string jsi_db_csv;
  std::string sweep_csv;
  std::vector<std::pair<std::string, std::string>> franson_scans;  // name, csv
  std::string franson_fits_txt;
  std::string ensemble_csv;

  bool all_pass() const;
  std::string report_text() const;
  std::string report_csv() const;
};

namespace report {

/// Recomputes every desk-checkable quantity of the source from the
/// scenario: dispersion checks, spectrum width, absolute rates, counting
/// estimators, the WDM correlation matrix and the Franson scans.
ReproduceResult run_reproduce(const Scenario& scenario);

/// Writes report.txt, report.csv and all CSV artifacts into `dir`
/// (created if needed).
void write_artifacts(const ReproduceResult& result, const std::string& dir);

/// Deterministic "%.*g"-style float formatting used across reports.
std::string format_double(double value, int significant = 6);

}  // namespace report
}  // namespace spdc
