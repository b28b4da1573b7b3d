#include "qwick/report.hpp"

#include <json.hpp>

namespace qwick::report {

using ordered_json = nlohmann::ordered_json;

std::string report_schema_version() { return "qwick-report/1"; }

void SuiteReport::add_case(CaseRecord c) {
  if (c.passed)
    ++passed;
  else
    ++failed;
  cases.push_back(std::move(c));
}

std::string to_json(const SuiteReport& r, const std::string& timestamp) {
  ordered_json j;
  j["schema"] = report_schema_version();
  j["suite"] = r.suite;
  j["timestamp"] = timestamp;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  ordered_json cases = ordered_json::array();
  for (const auto& c : r.cases) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["inputs_digest"] = c.inputs_digest;
    cj["residual"] = c.residual;
    cj["exact_zero"] = c.exact_zero;
    cj["status"] = c.passed ? "pass" : "fail";
    if (!c.note.empty()) cj["note"] = c.note;
    cases.push_back(std::move(cj));
  }
  j["cases"] = cases;
  if (!r.table.empty()) {
    ordered_json table;
    table["columns"] = r.table_columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.table) {
      ordered_json rj;
      rj["label"] = row.label;
      rj["values"] = row.values;
      rows.push_back(std::move(rj));
    }
    table["rows"] = rows;
    j["table"] = table;
  }
  ordered_json summary;
  summary["passed"] = r.passed;
  summary["failed"] = r.failed;
  summary["ok"] = r.ok();
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

std::string table_to_csv(const SuiteReport& r) {
  if (r.table.empty()) return {};
  std::string out = "label";
  for (const auto& c : r.table_columns) out += "," + c;
  out += "\n";
  for (const auto& row : r.table) {
    out += row.label;
    for (double v : row.values) {
      char buf[32];
      snprintf(buf, sizeof(buf), "%.12g", v);
      out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

bool validate_report_text(const std::string& text, std::string* error) {
  auto fail = [&](const std::string& why) {
    if (error) *error = why;
    return false;
  };
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) return fail("not parseable as JSON");
  if (!j.contains("schema") || !j["schema"].is_string()) return fail("missing schema field");
  if (j["schema"].get<std::string>() != report_schema_version())
    return fail("unknown schema version: " + j["schema"].get<std::string>());
  for (const char* field : {"suite", "params", "cases", "summary"})
    if (!j.contains(field)) return fail(std::string("missing field: ") + field);
  if (!j["cases"].is_array()) return fail("cases must be an array");
  for (const auto& c : j["cases"])
    if (!c.contains("name") || !c.contains("residual") || !c.contains("status"))
      return fail("malformed case record");
  return true;
}

}  // namespace qwick::report
