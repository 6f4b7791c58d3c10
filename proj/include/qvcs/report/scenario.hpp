#pragma once

// Scenario configuration for the verification driver.
//
// A scenario is one YAML document (JSON is accepted, being a YAML subset).
// The schema is documented in README.md; parse errors and schema violations
// raise ConfigError with the offending key in the message.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qvcs/hamiltonians.hpp"
#include "qvcs/serialization.hpp"

namespace qvcs::report {

struct SuiteInfo {
  std::string name;
  std::string description;
  std::string anchor;
};

/// The eight suites in their stable run order.
const std::vector<SuiteInfo>& suite_catalog();

bool is_known_suite(const std::string& name);

/// [{"name", "description", "anchor"}, ...] in catalog order.
ordered_json suite_catalog_json();

/// Parameter sweeps. An empty list means the axis was not given.
struct Grids {
  std::vector<double> omega_c;
  std::vector<double> xi;
  std::vector<double> gamma;
  std::vector<double> beta;
  std::vector<double> omega;
  std::vector<std::pair<double, double>> omega_pairs;
  std::vector<double> r;
  std::vector<double> eta;
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<double> tau;
};

struct Settings {
  std::size_t spectrum_levels = 50;
  std::size_t susy_n_max = 40;
  /// Excluded top indices; 0 means n_max / 4.
  std::size_t susy_margin = 0;
  std::size_t state_n_max = 60;
  std::size_t moment_n_max = 40;
  std::size_t q_moment_n_max = 25;
  std::size_t radial_nodes = 200;
  std::size_t identity_n_max = 30;
  std::size_t identity_interior = 20;
  double tail_tol = 1e-12;
};

struct Scenario {
  std::string name;
  ModelParams params;
  std::size_t n_max = 100;
  std::vector<std::string> suites;
  Grids grids;
  Settings settings;
  /// Keys are suite names or check ids ("suite.check"); a check id wins.
  std::map<std::string, double> tolerances;

  /// Override for check_id, else the suite-wide override, else fallback.
  double tolerance(const std::string& check_id, double fallback) const;
};

/// Grid axes each suite needs; a suite listing {"a", "b|c"} needs axis a and
/// at least one of b, c.
std::vector<std::string> required_axes(const std::string& suite);

/// Throws ConfigError when a named suite lacks a required axis.
void validate_suites(const Scenario& scenario, const std::vector<std::string>& suites);

Scenario parse_scenario(const std::string& text);

/// Reads and parses path. Throws ConfigError if unreadable.
Scenario load_scenario(const std::string& path);

/// Normalized echo of the scenario with defaults filled in, for provenance.
ordered_json to_json(const Scenario& scenario);

}  // namespace qvcs::report
