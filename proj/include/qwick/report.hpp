#ifndef QWICK_REPORT_HPP
#define QWICK_REPORT_HPP

#include <map>
#include <string>
#include <vector>

namespace qwick::report {

/// Report schema identifier embedded in every emitted file.
std::string report_schema_version();  // "qwick-report/1"

/// One verified case inside a suite run.
struct CaseRecord {
  std::string name;          // stable identifier of the checked instance
  std::string inputs_digest; // compact parameter digest
  double residual = 0.0;
  bool exact_zero = false;   // meaningful for exact backends only
  bool passed = false;
  std::string note;
};

/// One table row of measured norms (exportable as comma-separated values).
struct TableRow {
  std::string label;
  std::vector<double> values;
};

/// Everything one suite run produces.
struct SuiteReport {
  std::string suite;
  std::map<std::string, std::string> params;  // ordered, deterministic
  std::vector<CaseRecord> cases;
  std::vector<std::string> table_columns;
  std::vector<TableRow> table;
  int passed = 0;
  int failed = 0;
  bool ok() const { return failed == 0; }

  void add_case(CaseRecord c);
};

/// Deterministic JSON rendering (single trailing-newline text record).  The
/// timestamp is the only field allowed to differ between identical runs.
std::string to_json(const SuiteReport& r, const std::string& timestamp);

/// Comma-separated rendering of the norm table; empty when there is none.
std::string table_to_csv(const SuiteReport& r);

/// Validates an emitted report document: parseable, schema field present
/// and equal to the declared version, mandatory fields in place.
bool validate_report_text(const std::string& text, std::string* error = nullptr);

}  // namespace qwick::report

#endif
