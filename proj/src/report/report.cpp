#include "qvcs/report/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/Core>

#include "qvcs/errors.hpp"

namespace qvcs::report {
namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  if (!out) throw ConfigError("write failed for " + path.string());
}

ordered_json record_json(const Record& r) {
  return {{"check", r.check},       {"inputs", r.inputs},       {"expected", r.expected},
          {"observed", r.observed}, {"residual", r.residual},   {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(output.records.begin(), output.records.end(),
                     [](const Record& r) { return r.pass; });
}

bool RunResult::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass(); });
}

std::size_t RunResult::record_count() const {
  std::size_t n = 0;
  for (const auto& s : suites) n += s.output.records.size();
  return n;
}

std::size_t RunResult::failure_count() const {
  std::size_t n = 0;
  for (const auto& s : suites) {
    n += static_cast<std::size_t>(std::count_if(s.output.records.begin(), s.output.records.end(),
                                                [](const Record& r) { return !r.pass; }));
  }
  return n;
}

std::vector<std::string> ordered_suites(const std::vector<std::string>& requested) {
  for (const auto& name : requested) {
    if (!is_known_suite(name)) throw ConfigError("unknown suite '" + name + "'");
  }
  std::vector<std::string> out;
  for (const auto& info : suite_catalog()) {
    if (std::find(requested.begin(), requested.end(), info.name) != requested.end()) {
      out.push_back(info.name);
    }
  }
  return out;
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  const auto names = ordered_suites(options.suites.empty() ? scenario.suites : options.suites);
  validate_suites(scenario, names);
  RunResult result;
  for (const auto& name : names) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult sr;
    sr.name = name;
    try {
      sr.output = run_suite(name, scenario, options.jobs);
    } catch (const Error& e) {
      sr.output.records.push_back({name, name + ".error", ordered_json::object(), nullptr, e.what(),
                                   std::numeric_limits<double>::quiet_NaN(), 0.0, false});
    }
    sr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.suites.push_back(std::move(sr));
  }
  return result;
}

ordered_json report_json(const Scenario& scenario, const RunOptions& options,
                         const RunResult& result, const std::string& timestamp) {
  const Settings& s = scenario.settings;
  ordered_json env = {
      {"version", kToolVersion},
      {"seed", 0},
      {"deterministic", options.deterministic},
      {"compiler", __VERSION__},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                    "." + std::to_string(EIGEN_MINOR_VERSION)},
      {"node_counts",
       {{"radial_gauss_laguerre", s.radial_nodes},
        {"angular_phase", 4 * s.identity_n_max + 8},
        {"angular_polar", 8},
        {"angular_azimuth", 8}}},
      {"truncation",
       {{"spectrum_n_max", scenario.n_max},
        {"susy_n_max", s.susy_n_max},
        {"state_n_max", s.state_n_max},
        {"identity_n_max", s.identity_n_max}}},
  };

  ordered_json suites = ordered_json::array();
  ordered_json records = ordered_json::array();
  for (const auto& sr : result.suites) {
    const auto fails = std::count_if(sr.output.records.begin(), sr.output.records.end(),
                                     [](const Record& r) { return !r.pass; });
    ordered_json entry = {{"name", sr.name},
                          {"pass", sr.pass()},
                          {"checks", sr.output.records.size()},
                          {"failures", fails}};
    if (!options.deterministic) entry["seconds"] = sr.seconds;
    suites.push_back(entry);
    for (const auto& r : sr.output.records) {
      ordered_json rec = {{"suite", r.suite}};
      rec.update(record_json(r));
      records.push_back(rec);
    }
  }

  return {{"scenario", scenario.name},
          {"timestamp", timestamp},
          {"overall_pass", result.pass()},
          {"record_count", result.record_count()},
          {"failure_count", result.failure_count()},
          {"environment", env},
          {"config", to_json(scenario)},
          {"suites", suites},
          {"records", records}};
}

void write_summary_csv(std::ostream& os, const RunResult& result) {
  write_csv_row(os, kSummaryHeader);
  for (const auto& sr : result.suites) {
    for (const auto& r : sr.output.records) {
      write_csv_row(os, {r.suite, r.check, r.inputs.dump(), format_double(r.residual),
                         format_double(r.tolerance), r.pass ? "true" : "false"});
    }
  }
}

void write_moments_csv(std::ostream& os, const RunResult& result) {
  write_csv_row(os, kMomentsHeader);
  for (const auto& sr : result.suites) {
    for (const auto& m : sr.output.moments) {
      write_csv_row(os, {m.family, std::to_string(m.n), m.omega_params, format_double(m.residual),
                         std::to_string(m.node_count)});
    }
  }
}

void write_expectations_csv(std::ostream& os, const RunResult& result) {
  write_csv_row(os, kExpectationsHeader);
  for (const auto& sr : result.suites) {
    for (const auto& e : sr.output.expectations) {
      write_csv_row(os, {e.family, e.params, e.observable, e.closed_form, e.numeric,
                         format_double(e.abs_diff)});
    }
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int run_command(const std::string& config_path, const std::string& out_dir,
                const RunOptions& options, std::ostream& log) {
  Scenario scenario;
  RunResult result;
  try {
    scenario = load_scenario(config_path);
    if (options.jobs == 0) throw ConfigError("--jobs must be >= 1");
    result = run_scenario(scenario, options);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json",
               report_json(scenario, options, result, utc_timestamp()).dump(2) + "\n");
    std::ostringstream summary, moments, expectations;
    write_summary_csv(summary, result);
    write_moments_csv(moments, result);
    write_expectations_csv(expectations, result);
    write_file(dir / "summary.csv", summary.str());
    write_file(dir / "moments.csv", moments.str());
    write_file(dir / "expectations.csv", expectations.str());
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const auto& sr : result.suites) {
    const auto fails = std::count_if(sr.output.records.begin(), sr.output.records.end(),
                                     [](const Record& r) { return !r.pass; });
    log << sr.name << ": " << sr.output.records.size() << " checks, " << fails << " failed\n";
  }
  log << (result.pass() ? "PASS" : "FAIL") << " (" << result.record_count() << " checks, "
      << result.failure_count() << " failed)\n";
  return result.pass() ? kExitOk : kExitFail;
}

}  // namespace qvcs::report
