#pragma once

// Verification suites. Each suite expands its grid into independent points,
// evaluates them (optionally on several threads) and returns the records in
// grid order, so the output never depends on the thread count.

#include <cstddef>
#include <string>
#include <vector>

#include "qvcs/report/scenario.hpp"
#include "qvcs/serialization.hpp"

namespace qvcs::report {

/// One check at one grid point. Passes iff residual is finite and
/// residual <= tolerance.
struct Record {
  std::string suite;
  std::string check;
  ordered_json inputs;
  ordered_json expected;
  ordered_json observed;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct MomentRow {
  std::string family;
  std::size_t n;
  std::string omega_params;
  double residual;
  std::size_t node_count;
};

struct ExpectationCsvRow {
  std::string family;
  std::string params;
  std::string observable;
  std::string closed_form;
  std::string numeric;
  double abs_diff;
};

struct SuiteOutput {
  std::vector<Record> records;
  std::vector<MomentRow> moments;
  std::vector<ExpectationCsvRow> expectations;
};

/// Runs one suite of the catalog with `jobs` worker threads (>= 1).
/// Errors raised at a grid point become a failing record "<suite>.error".
SuiteOutput run_suite(const std::string& suite, const Scenario& scenario, std::size_t jobs);

}  // namespace qvcs::report
