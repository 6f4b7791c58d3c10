// qvcs_verify: run verification suites from a scenario file.
//
//   qvcs_verify run --config <path> [--out <dir>] [--suite name]... [--deterministic] [--jobs N]
//   qvcs_verify list-suites [--json]
//
// Exit codes: 0 all checks pass, 1 some check failed (reports still
// written), 2 usage or configuration error. Without --out the directory
// named by QVCS_OUT_DIR is used.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qvcs/report/report.hpp"
#include "qvcs/report/scenario.hpp"

int main(int argc, char** argv) {
  using namespace qvcs::report;

  CLI::App app{"Verification suites for quaternionic vector coherent states"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  RunOptions options;
  auto* run = app.add_subcommand("run", "run the suites of a scenario");
  run->add_option("--config", config, "scenario file (YAML or JSON)")->required();
  run->add_option("--out", out, std::string("output directory (default: $") + kOutDirEnv + ")");
  run->add_option("--suite", options.suites, "restrict to this suite (repeatable)");
  run->add_flag("--deterministic", options.deterministic, "omit timings from report.json");
  run->add_option("--jobs", options.jobs, "worker threads per suite")
      ->check(CLI::PositiveNumber);

  bool as_json = false;
  auto* list = app.add_subcommand("list-suites", "print the suite catalog");
  list->add_flag("--json", as_json, "machine-readable catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*list) {
    if (as_json) {
      std::cout << suite_catalog_json().dump(2) << "\n";
    } else {
      for (const auto& s : suite_catalog()) {
        std::cout << s.name << "\t" << s.description << "\t[" << s.anchor << "]\n";
      }
    }
    return kExitOk;
  }

  if (out.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    if (env == nullptr || *env == '\0') {
      std::cerr << "error: no --out given and " << kOutDirEnv << " is unset\n";
      return kExitUsage;
    }
    out = env;
  }
  return run_command(config, out, options, std::cerr);
}
