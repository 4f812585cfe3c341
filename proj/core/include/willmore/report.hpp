#pragma once

// Named verification suites over a configured surface, emitting a versioned
// JSON report ("willmore-lab/1") and optional CSV tables.  Reports are
// deterministic for a fixed config (wall-clock timings are only attached on
// request since they break byte-stability).

#include <optional>
#include <string>
#include <vector>

#include "willmore/domain.hpp"

namespace willmore {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "willmore-lab/1";

struct SuiteConfig {
  std::string suite;                   // identities | energies | willmore | quartic |
                                       // branch | monotonicity | convergence
  std::string surface;                 // zoo name, optionally "name(p1,p2,...)"
  std::string dsl_file;                // alternative surface source
  GridSpec grid{64, 64};
  int jet_order = 5;                   // in [2, 6]
  bool extended_precision = false;
  std::optional<std::string> radii;    // "r0:ratio:count"
  std::string out_path;                // JSON output ("" = stdout)
  std::string csv_path;                // optional CSV table
  bool with_timings = false;
  int convergence_levels = 3;
};

struct CheckResult {
  std::string name;
  double value = 0;
  double tolerance = 0;   // 0 = informational only
  bool pass = true;
  std::string note;
};

struct Report {
  std::string suite;
  std::vector<CheckResult> results;
  bool all_pass = true;
  std::string json;  // serialized document
};

// Executes one suite; throws ConfigError (exit 2) on invalid configuration and
// NumericalError (exit 3) on numerical failure.
Report run_suite(const SuiteConfig& cfg);

// Refinement study: grid doubled (levels >= 3 required), Richardson slopes of
// the energy quantities appended.
Report convergence_table(const SuiteConfig& cfg);

// Suite result written to cfg.out_path (or returned only, when empty).
void write_report(const Report& report, const SuiteConfig& cfg);

std::vector<double> parse_radii_spec(const std::string& spec);

}  // namespace willmore
