#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qvcs/errors.hpp"
#include "qvcs/report/report.hpp"

using namespace qvcs;
using namespace qvcs::report;

namespace {

const char* kSmall = R"(
name: small
params: {omega_c: 1.0, xi: 0.25, gamma: 0.6}
truncation: {n_max: 40}
suites: [moments, spectrum]
grids:
  omega_c: [1.0]
  xi: [0.25]
  gamma: [0.6]
  omega: [0.5, 1.3]
settings: {spectrum_levels: 20}
)";

std::filesystem::path temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("qvcs_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string write_config(const std::filesystem::path& dir, const std::string& text) {
  std::filesystem::create_directories(dir);
  const auto path = dir / "config.yaml";
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Scenario, ParsesAxesAndDefaults) {
  const Scenario sc = parse_scenario(R"(
name: t
params: {omega_c: 1.2, lambda: [[1, 0], [0, 1]]}
truncation: {n_max: 80}
suites: []
grids: {r: {start: 0, stop: 1, count: 3}, omega_pairs: [[0.9, 1.1]]}
)");
  EXPECT_EQ(sc.n_max, 80u);
  ASSERT_EQ(sc.grids.r.size(), 3u);
  EXPECT_DOUBLE_EQ(sc.grids.r[1], 0.5);
  EXPECT_EQ(sc.grids.omega_pairs.front().second, 1.1);
  EXPECT_EQ(sc.settings.susy_n_max, 40u);
}

TEST(Scenario, RejectsBadInput) {
  const std::string head = "name: t\ntruncation: {n_max: 60}\n";
  EXPECT_THROW(parse_scenario(head + "suites: [bogus]\n"), ConfigError);
  EXPECT_THROW(parse_scenario(head + "suites: []\nextra: 1\n"), ConfigError);
  EXPECT_THROW(parse_scenario(head + "suites: [moments]\n"), ConfigError);
  EXPECT_THROW(parse_scenario(head + "suites: []\ntolerances: {moments: 0}\n"), ConfigError);
  EXPECT_THROW(parse_scenario(head + "suites: []\ntolerances: {other: 1}\n"), ConfigError);
  EXPECT_THROW(parse_scenario(head + "suites: []\ngrids: {r: {start: 0, stop: 1}}\n"),
               ConfigError);
  EXPECT_THROW(parse_scenario("name: t\nsuites: []\n"), ConfigError);
  EXPECT_THROW(parse_scenario("[unterminated"), ConfigError);
  EXPECT_THROW(load_scenario("/nonexistent/config.yaml"), ConfigError);
}

TEST(Scenario, TolerancePrecedence) {
  const Scenario sc = parse_scenario(R"(
name: t
truncation: {n_max: 60}
suites: []
tolerances: {moments: 1e-3, moments.scalar: 1e-5}
)");
  EXPECT_EQ(sc.tolerance("moments.scalar", 1.0), 1e-5);
  EXPECT_EQ(sc.tolerance("moments.q_family", 1.0), 1e-3);
  EXPECT_EQ(sc.tolerance("identity.refinement", 1.0), 1.0);
}

TEST(Catalog, EightSuitesWithAnchors) {
  const auto& cat = suite_catalog();
  ASSERT_EQ(cat.size(), 8u);
  EXPECT_EQ(cat.front().name, "spectrum");
  EXPECT_EQ(cat.back().name, "displacement");
  for (const auto& s : cat) {
    EXPECT_FALSE(s.description.empty());
    EXPECT_FALSE(s.anchor.empty());
  }
  EXPECT_EQ(suite_catalog_json().size(), 8u);
  EXPECT_EQ(ordered_suites({"displacement", "moments", "spectrum"}),
            (std::vector<std::string>{"spectrum", "moments", "displacement"}));
}

TEST(Run, SpectrumAndMomentsPass) {
  const RunResult r = run_scenario(parse_scenario(kSmall), RunOptions{});
  ASSERT_EQ(r.suites.size(), 2u);
  EXPECT_EQ(r.suites[0].name, "spectrum");
  EXPECT_TRUE(r.pass()) << r.failure_count() << " failures";
  bool saw_energy = false;
  for (const Record& rec : r.suites[0].output.records) {
    if (rec.check == "spectrum.rashba.energy") {
      saw_energy = true;
      EXPECT_LE(rec.residual, 1e-10);
    }
  }
  EXPECT_TRUE(saw_energy);
  std::size_t scalar_rows = 0;
  for (const MomentRow& m : r.suites[1].output.moments) scalar_rows += m.family == "scalar";
  EXPECT_EQ(scalar_rows, 2u * 41u);
}

TEST(Run, JobsDoNotChangeReport) {
  const Scenario sc = parse_scenario(kSmall);
  RunOptions one;
  one.deterministic = true;
  RunOptions three = one;
  three.jobs = 3;
  const auto a = report_json(sc, one, run_scenario(sc, one), "T");
  const auto b = report_json(sc, three, run_scenario(sc, three), "T");
  auto strip = [](ordered_json j) {
    j["environment"].erase("jobs");
    j["config"].erase("jobs");
    return j.dump();
  };
  EXPECT_EQ(strip(a), strip(b));
  EXPECT_FALSE(a["suites"][0].contains("seconds"));
}

TEST(Run, EmptySuiteListSucceeds) {
  const auto dir = temp_dir("empty");
  const std::string cfg =
      write_config(dir, "name: e\ntruncation: {n_max: 60}\nsuites: []\n");
  std::ostringstream log;
  EXPECT_EQ(run_command(cfg, (dir / "out").string(), RunOptions{}, log), kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  EXPECT_EQ(j["record_count"], 0);
  EXPECT_TRUE(j["overall_pass"].get<bool>());
  EXPECT_EQ(slurp(dir / "out" / "summary.csv"), "suite,check,inputs,residual,tolerance,pass\n");
}

TEST(Run, FailingToleranceGivesExitOneWithFiles) {
  const auto dir = temp_dir("fail");
  const std::string cfg = write_config(dir, std::string(kSmall) + "tolerances: {moments: 1e-300}\n");
  std::ostringstream log;
  EXPECT_EQ(run_command(cfg, (dir / "out").string(), RunOptions{}, log), kExitFail);
  for (const char* f : {"report.json", "summary.csv", "moments.csv", "expectations.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / "out" / f)) << f;
  }
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  EXPECT_FALSE(j["overall_pass"].get<bool>());
  EXPECT_GT(j["failure_count"].get<int>(), 0);
}

TEST(Run, BadConfigIsUsageError) {
  const auto dir = temp_dir("bad");
  const std::string cfg = write_config(dir, "name: b\nsuites: [nope]\n");
  std::ostringstream log;
  EXPECT_EQ(run_command(cfg, (dir / "out").string(), RunOptions{}, log), kExitUsage);
  EXPECT_NE(log.str().find("truncation"), std::string::npos);
}
