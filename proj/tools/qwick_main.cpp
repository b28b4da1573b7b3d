// Batch driver: configures a run, executes the selected verification
// suites, and writes one structured report per suite.
//
// Exit codes: 0 all assertions passed, 1 at least one assertion failed,
// 2 configuration or usage error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qwick/report.hpp"
#include "qwick/suites.hpp"

namespace fs = std::filesystem;
using namespace qwick;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertionFailure = 1;
constexpr int kExitConfigError = 2;

std::string now_timestamp() {
  char buf[64];
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int validate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open report file: " << path << "\n";
    return kExitConfigError;
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::string why;
  if (!report::validate_report_text(text, &why)) {
    std::cerr << "error: invalid report: " << why << "\n";
    return kExitConfigError;
  }
  std::cout << "valid report (" << report::report_schema_version() << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qwick - deformed Fock space verification suites"};

  int dim = 2;
  std::string q_str;
  std::string mode = "exact";
  int max_n = 3, max_k = 3;
  int truncation = -1;
  std::uint64_t seed = 1;
  std::vector<std::string> suite_names;
  std::string out_dir;
  double tolerance = 1e-10;
  std::string validate_path;
  bool show_schema = false;

  app.add_option("--dim", dim, "one-particle dimension (>= 1)")->capture_default_str();
  app.add_option("--q", q_str,
                 "deformation parameter: a rational p/r in exact mode, a decimal in float mode");
  app.add_option("--mode", mode, "arithmetic backend: exact | float")->capture_default_str();
  app.add_option("--max-n", max_n, "largest left word length")->capture_default_str();
  app.add_option("--max-k", max_k, "largest right word length")->capture_default_str();
  app.add_option("--truncation", truncation,
                 "graded-space truncation (default max_n + max_k)");
  app.add_option("--seed", seed, "seed for every sampled check")->capture_default_str();
  app.add_option("--suite", suite_names,
                 "suite to run (repeatable): identities | permutation-lemma | combinatorial | "
                 "norms | khintchine | haagerup");
  app.add_option("--out", out_dir,
                 "report output directory (default $QWICK_OUT_DIR or ./qwick-reports)");
  app.add_option("--tolerance", tolerance, "float-mode residual tolerance")
      ->capture_default_str();
  app.add_option("--validate", validate_path, "validate an emitted report file and exit");
  app.add_flag("--schema-version", show_schema, "print the report schema identifier and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitConfigError;
  }

  if (show_schema) {
    std::cout << report::report_schema_version() << "\n";
    return kExitOk;
  }
  if (!validate_path.empty()) return validate_file(validate_path);

  // ---- configuration validation ----
  if (dim < 1) {
    std::cerr << "error: --dim must be at least 1\n";
    return kExitConfigError;
  }
  if (mode != "exact" && mode != "float") {
    std::cerr << "error: --mode must be exact or float\n";
    return kExitConfigError;
  }
  if (suite_names.empty()) {
    std::cerr << "error: at least one --suite is required\n";
    return kExitConfigError;
  }
  for (const auto& name : suite_names) {
    if (!suites::is_known_suite(name)) {
      std::cerr << "error: unknown suite: " << name << "\n";
      return kExitConfigError;
    }
    if (mode == "exact" && suites::suite_requires_float(name)) {
      std::cerr << "error: suite '" << name << "' needs float mode\n";
      return kExitConfigError;
    }
  }

  suites::SuiteConfig cfg;
  cfg.dim = dim;
  cfg.mode = mode;
  cfg.max_n = max_n;
  cfg.max_k = max_k;
  cfg.truncation = truncation >= 0 ? truncation : max_n + max_k;
  cfg.seed = seed;
  cfg.tolerance = tolerance;
  if (cfg.truncation < max_n + max_k) {
    std::cerr << "error: --truncation must cover max_n + max_k\n";
    return kExitConfigError;
  }

  if (!q_str.empty()) {
    if (mode == "exact") {
      // rational only; exact mode must never round
      if (q_str.find('.') != std::string::npos) {
        std::cerr << "error: exact mode takes q as a rational p/r\n";
        return kExitConfigError;
      }
      try {
        cfg.q_exact = Rational::from_string(q_str);
      } catch (const std::exception& e) {
        std::cerr << "error: cannot parse --q: " << e.what() << "\n";
        return kExitConfigError;
      }
      if (!(cfg.q_exact.abs() < Rational(1))) {
        std::cerr << "error: |q| must be below 1\n";
        return kExitConfigError;
      }
    } else {
      char* end = nullptr;
      cfg.q_float = std::strtod(q_str.c_str(), &end);
      if (end == q_str.c_str() || *end != '\0') {
        std::cerr << "error: cannot parse --q as a decimal\n";
        return kExitConfigError;
      }
      // the float regime keeps away from the unit circle, where the Gram
      // matrices lose numeric positivity
      if (!(std::abs(cfg.q_float) <= 0.9)) {
        std::cerr << "error: float mode requires |q| <= 0.9\n";
        return kExitConfigError;
      }
    }
  }

  if (out_dir.empty()) {
    const char* env = std::getenv("QWICK_OUT_DIR");
    out_dir = env && *env ? env : "qwick-reports";
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << out_dir << "\n";
    return kExitConfigError;
  }

  // ---- run ----
  bool all_ok = true;
  const std::string stamp = now_timestamp();
  for (const auto& name : suite_names) {
    report::SuiteReport rep;
    try {
      rep = suites::run_suite(name, cfg);
    } catch (const std::exception& e) {
      std::cerr << "error: suite '" << name << "' aborted: " << e.what() << "\n";
      return kExitConfigError;
    }
    const fs::path json_path = fs::path(out_dir) / (name + ".json");
    std::ofstream out(json_path);
    out << report::to_json(rep, stamp);
    out.close();
    const std::string csv = report::table_to_csv(rep);
    if (!csv.empty()) {
      std::ofstream csv_file(fs::path(out_dir) / (name + ".csv"));
      csv_file << csv;
    }
    std::cout << name << ": " << rep.passed << " passed, " << rep.failed << " failed -> "
              << json_path.string() << "\n";
    if (!rep.ok()) {
      all_ok = false;
      for (const auto& c : rep.cases)
        if (!c.passed) {
          std::cout << "first failing case: " << c.name << " [" << c.inputs_digest
                    << "] residual=" << c.residual;
          if (!c.note.empty()) std::cout << " (" << c.note << ")";
          std::cout << "\n";
          break;
        }
    }
  }
  return all_ok ? kExitOk : kExitAssertionFailure;
}
