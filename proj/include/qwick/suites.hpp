#ifndef QWICK_SUITES_HPP
#define QWICK_SUITES_HPP

#include <cstdint>
#include <string>

#include "qwick/rational.hpp"
#include "qwick/report.hpp"

namespace qwick::suites {

/// Shared run configuration for all verification suites.
struct SuiteConfig {
  int dim = 2;
  std::string mode = "exact";  // "exact" | "float"
  Rational q_exact{1, 2};      // rational q for exact-mode point checks
  double q_float = 0.5;        // numeric q for float mode
  int max_n = 3;
  int max_k = 3;
  int truncation = 8;
  uint64_t seed = 1;
  double tolerance = 1e-10;
};

/// The six batch suites.  Each returns a structured report; a suite asserts
/// nothing beyond what it records, so callers inspect ok().
report::SuiteReport run_identities(const SuiteConfig& cfg);
report::SuiteReport run_permutation_lemma(const SuiteConfig& cfg);
report::SuiteReport run_combinatorial(const SuiteConfig& cfg);
report::SuiteReport run_norms(const SuiteConfig& cfg);
report::SuiteReport run_khintchine(const SuiteConfig& cfg);
report::SuiteReport run_haagerup(const SuiteConfig& cfg);

/// Exact-versus-float agreement at the configured rational point.
report::SuiteReport run_crosscheck(const SuiteConfig& cfg);

/// Suite lookup used by the command-line driver; empty report with
/// ok() == false when the name is unknown.
bool is_known_suite(const std::string& name);
bool suite_requires_float(const std::string& name);
report::SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace qwick::suites

#endif
