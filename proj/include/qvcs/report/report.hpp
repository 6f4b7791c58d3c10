#pragma once

// Runs a scenario and writes report.json, summary.csv, moments.csv and
// expectations.csv into an output directory.

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "qvcs/report/scenario.hpp"
#include "qvcs/report/suites.hpp"
#include "qvcs/serialization.hpp"

namespace qvcs::report {

inline constexpr const char* kToolVersion = "0.1.0";

/// Default output directory when --out is absent.
inline constexpr const char* kOutDirEnv = "QVCS_OUT_DIR";

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitUsage = 2 };

struct RunOptions {
  /// Replaces the scenario's suite list when non-empty.
  std::vector<std::string> suites;
  /// Omit wall-clock timings so report.json depends on the config alone
  /// (the timestamp field aside).
  bool deterministic = false;
  std::size_t jobs = 1;
};

struct SuiteResult {
  std::string name;
  SuiteOutput output;
  double seconds = 0.0;

  bool pass() const;
};

struct RunResult {
  std::vector<SuiteResult> suites;

  /// True iff every record of every suite passes (vacuously for no suites).
  bool pass() const;
  std::size_t record_count() const;
  std::size_t failure_count() const;
};

/// Suites run in catalog order whatever the order requested.
std::vector<std::string> ordered_suites(const std::vector<std::string>& requested);

/// Throws ConfigError for unknown suites or missing grid axes.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options);

ordered_json report_json(const Scenario& scenario, const RunOptions& options,
                         const RunResult& result, const std::string& timestamp);

inline const std::vector<std::string> kSummaryHeader = {"suite",    "check",     "inputs",
                                                        "residual", "tolerance", "pass"};
inline const std::vector<std::string> kMomentsHeader = {"family", "n", "omega_params", "residual",
                                                        "node_count"};
inline const std::vector<std::string> kExpectationsHeader = {
    "family", "params", "observable", "closed_form", "numeric", "abs_diff"};

void write_summary_csv(std::ostream& os, const RunResult& result);
void write_moments_csv(std::ostream& os, const RunResult& result);
void write_expectations_csv(std::ostream& os, const RunResult& result);

/// UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

/// Loads the config, runs it and writes the four files into out_dir (created
/// if missing). Returns an ExitCode; diagnostics go to log.
int run_command(const std::string& config_path, const std::string& out_dir,
                const RunOptions& options, std::ostream& log);

}  // namespace qvcs::report
