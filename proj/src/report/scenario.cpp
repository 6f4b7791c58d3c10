#include "qvcs/report/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qvcs/errors.hpp"

namespace qvcs::report {
namespace {

const std::set<std::string> kTopKeys = {"name",  "params",   "truncation", "suites",
                                        "grids", "settings", "tolerances"};
const std::set<std::string> kParamKeys = {"omega_c", "xi", "gauge",   "gamma",
                                          "beta",    "k",  "epsilon", "lambda"};
const std::set<std::string> kGridKeys = {"omega_c", "xi",  "gamma", "beta", "omega", "omega_pairs",
                                         "r",       "eta", "phi",   "psi",  "tau"};

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double as_double(const YAML::Node& node, const std::string& where) {
  try {
    const double v = node.as<double>();
    if (!std::isfinite(v)) throw ConfigError(where + ": value must be finite");
    return v;
  } catch (const YAML::Exception&) {
    throw ConfigError(where + ": expected a number");
  }
}

std::size_t as_size(const YAML::Node& node, const std::string& where) {
  const double v = as_double(node, where);
  if (v < 0.0 || std::floor(v) != v) throw ConfigError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

int as_int(const YAML::Node& node, const std::string& where) {
  const double v = as_double(node, where);
  if (std::floor(v) != v) throw ConfigError(where + ": expected an integer");
  return static_cast<int>(v);
}

cplx as_complex(const YAML::Node& node, const std::string& where) {
  if (node.IsScalar()) return {as_double(node, where), 0.0};
  if (!node.IsSequence() || node.size() != 2) throw ConfigError(where + ": expected [re, im]");
  return {as_double(node[0], where), as_double(node[1], where)};
}

// A list of numbers, or {start, stop, count} for an inclusive linspace.
std::vector<double> as_axis(const YAML::Node& node, const std::string& where) {
  std::vector<double> out;
  if (node.IsSequence()) {
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(as_double(node[i], where));
  } else if (node.IsMap()) {
    check_keys(node, {"start", "stop", "count"}, where);
    if (!node["start"] || !node["stop"] || !node["count"]) {
      throw ConfigError(where + ": linspace needs start, stop and count");
    }
    const double a = as_double(node["start"], where);
    const double b = as_double(node["stop"], where);
    const std::size_t n = as_size(node["count"], where);
    if (n == 0) throw ConfigError(where + ": count must be >= 1");
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(i + 1 == n && n > 1 ? b
                                        : a + (b - a) * static_cast<double>(i) /
                                                  static_cast<double>(std::max<std::size_t>(n - 1, 1)));
    }
  } else {
    throw ConfigError(where + ": expected a list or {start, stop, count}");
  }
  if (out.empty()) throw ConfigError(where + ": empty axis");
  return out;
}

ModelParams parse_params(const YAML::Node& node) {
  ModelParams p;
  if (!node) return p;
  check_keys(node, kParamKeys, "params");
  if (node["omega_c"]) p.omega_c = as_double(node["omega_c"], "params.omega_c");
  if (node["xi"]) p.xi = as_double(node["xi"], "params.xi");
  if (node["gamma"]) p.gamma = as_double(node["gamma"], "params.gamma");
  if (node["beta"]) p.beta = as_double(node["beta"], "params.beta");
  if (node["k"]) p.k = as_int(node["k"], "params.k");
  if (node["epsilon"]) p.epsilon = as_int(node["epsilon"], "params.epsilon");
  if (node["gauge"]) {
    const auto g = node["gauge"].as<std::string>();
    if (g == "plus_z") {
      p.gauge = Gauge::plus_z;
    } else if (g == "minus_z") {
      p.gauge = Gauge::minus_z;
    } else {
      throw ConfigError("params.gauge: expected plus_z or minus_z");
    }
  }
  if (node["lambda"]) {
    const YAML::Node l = node["lambda"];
    const bool table = l.IsSequence() && l.size() > 0 && l[0].IsSequence();
    if (table) {
      std::vector<cplx> values;
      for (std::size_t i = 0; i < l.size(); ++i) values.push_back(as_complex(l[i], "params.lambda"));
      p.lambda = LambdaSpec::table(std::move(values));
    } else {
      p.lambda = LambdaSpec::constant(as_complex(l, "params.lambda"));
    }
  }
  p.validate();
  return p;
}

Grids parse_grids(const YAML::Node& node) {
  Grids g;
  if (!node) return g;
  check_keys(node, kGridKeys, "grids");
  auto axis = [&](const char* key, std::vector<double>& dst) {
    if (node[key]) dst = as_axis(node[key], std::string("grids.") + key);
  };
  axis("omega_c", g.omega_c);
  axis("xi", g.xi);
  axis("gamma", g.gamma);
  axis("beta", g.beta);
  axis("omega", g.omega);
  axis("r", g.r);
  axis("eta", g.eta);
  axis("phi", g.phi);
  axis("psi", g.psi);
  axis("tau", g.tau);
  if (node["omega_pairs"]) {
    const YAML::Node l = node["omega_pairs"];
    if (!l.IsSequence() || l.size() == 0) throw ConfigError("grids.omega_pairs: expected a list");
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!l[i].IsSequence() || l[i].size() != 2) {
        throw ConfigError("grids.omega_pairs: expected [omega_plus, omega_minus] entries");
      }
      g.omega_pairs.emplace_back(as_double(l[i][0], "grids.omega_pairs"),
                                 as_double(l[i][1], "grids.omega_pairs"));
    }
  }
  return g;
}

Settings parse_settings(const YAML::Node& node) {
  Settings s;
  if (!node) return s;
  check_keys(node,
             {"spectrum_levels", "susy_n_max", "susy_margin", "state_n_max", "moment_n_max",
              "q_moment_n_max", "radial_nodes", "identity_n_max", "identity_interior", "tail_tol"},
             "settings");
  auto size = [&](const char* key, std::size_t& dst) {
    if (node[key]) dst = as_size(node[key], std::string("settings.") + key);
  };
  size("spectrum_levels", s.spectrum_levels);
  size("susy_n_max", s.susy_n_max);
  size("susy_margin", s.susy_margin);
  size("state_n_max", s.state_n_max);
  size("moment_n_max", s.moment_n_max);
  size("q_moment_n_max", s.q_moment_n_max);
  size("radial_nodes", s.radial_nodes);
  size("identity_n_max", s.identity_n_max);
  size("identity_interior", s.identity_interior);
  if (node["tail_tol"]) s.tail_tol = as_double(node["tail_tol"], "settings.tail_tol");
  if (!(s.tail_tol > 0.0)) throw ConfigError("settings.tail_tol must be > 0");
  if (s.radial_nodes == 0) throw ConfigError("settings.radial_nodes must be >= 1");
  if (s.identity_interior > s.identity_n_max) {
    throw ConfigError("settings.identity_interior exceeds identity_n_max");
  }
  if (s.susy_margin >= s.susy_n_max) throw ConfigError("settings.susy_margin must be < susy_n_max");
  return s;
}

bool valid_tolerance_key(const std::string& key) {
  if (is_known_suite(key)) return true;
  const auto dot = key.find('.');
  return dot != std::string::npos && dot + 1 < key.size() && is_known_suite(key.substr(0, dot));
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = {
      {"spectrum",
       "closed-form Zeeman, Rashba and Dresselhaus levels, mixing angles and passage operator "
       "against dense diagonalization",
       "spin-orbit Landau levels: exact spectrum and dressed eigenstates"},
      {"susy", "supercharge anticommutator, nilpotency and ladder commutator on interior indices",
       "supersymmetric decomposition of the oscillator part"},
      {"moments", "radial Stieltjes moment identities for the scalar and Q-family densities",
       "moment problems behind the resolution of the identity"},
      {"identity", "assembled resolution of the identity against I on the interior block",
       "resolution of the identity for the quaternionic coherent states"},
      {"expectations", "closed-form expectation values against numeric expectations",
       "expectation values of ladder, quadrature and number operators"},
      {"uncertainty", "quadrature dispersion product against the commutator bound",
       "uncertainty relation for the quaternionic coherent states"},
      {"evolution", "phase evolution: norm preservation and group law",
       "time evolution of the coherent states"},
      {"displacement",
       "normalization, eigenrelation, reduction chain and displacement-operator form",
       "coherent-state construction and displacement operator"},
  };
  return catalog;
}

bool is_known_suite(const std::string& name) {
  const auto& c = suite_catalog();
  return std::any_of(c.begin(), c.end(), [&](const SuiteInfo& s) { return s.name == name; });
}

ordered_json suite_catalog_json() {
  ordered_json out = ordered_json::array();
  for (const auto& s : suite_catalog()) {
    out.push_back({{"name", s.name}, {"description", s.description}, {"anchor", s.anchor}});
  }
  return out;
}

double Scenario::tolerance(const std::string& check_id, double fallback) const {
  if (auto it = tolerances.find(check_id); it != tolerances.end()) return it->second;
  const std::string suite = check_id.substr(0, check_id.find('.'));
  if (auto it = tolerances.find(suite); it != tolerances.end()) return it->second;
  return fallback;
}

std::vector<std::string> required_axes(const std::string& suite) {
  if (suite == "spectrum") return {"omega_c", "xi", "gamma|beta"};
  if (suite == "moments" || suite == "identity") return {"omega"};
  if (suite == "expectations") return {"r", "eta", "phi", "omega"};
  if (suite == "uncertainty") return {"r", "eta", "phi"};
  if (suite == "evolution") return {"r", "tau"};
  if (suite == "displacement") return {"r", "omega"};
  return {};
}

void validate_suites(const Scenario& sc, const std::vector<std::string>& suites) {
  auto present = [&](const std::string& axis) {
    const Grids& g = sc.grids;
    if (axis == "omega_c") return !g.omega_c.empty();
    if (axis == "xi") return !g.xi.empty();
    if (axis == "gamma") return !g.gamma.empty();
    if (axis == "beta") return !g.beta.empty();
    if (axis == "omega") return !g.omega.empty();
    if (axis == "r") return !g.r.empty();
    if (axis == "eta") return !g.eta.empty();
    if (axis == "phi") return !g.phi.empty();
    if (axis == "tau") return !g.tau.empty();
    return false;
  };
  for (const auto& suite : suites) {
    if (!is_known_suite(suite)) throw ConfigError("unknown suite '" + suite + "'");
    for (const auto& req : required_axes(suite)) {
      bool ok = false;
      std::stringstream alts(req);
      std::string axis;
      while (std::getline(alts, axis, '|')) ok = ok || present(axis);
      if (!ok) throw ConfigError("suite '" + suite + "' requires grids." + req);
    }
  }
}

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
  check_keys(root, kTopKeys, "config");

  Scenario sc;
  if (!root["name"] || !root["name"].IsScalar()) throw ConfigError("config: 'name' is required");
  sc.name = root["name"].as<std::string>();
  try {
    sc.params = parse_params(root["params"]);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }

  const YAML::Node trunc = root["truncation"];
  if (!trunc) throw ConfigError("config: 'truncation' is required");
  check_keys(trunc, {"n_max"}, "truncation");
  if (!trunc["n_max"]) throw ConfigError("truncation.n_max is required");
  sc.n_max = as_size(trunc["n_max"], "truncation.n_max");
  if (sc.n_max < 1) throw ConfigError("truncation.n_max must be >= 1");

  const YAML::Node suites = root["suites"];
  if (!suites || !suites.IsSequence()) throw ConfigError("config: 'suites' list is required");
  for (std::size_t i = 0; i < suites.size(); ++i) {
    const auto name = suites[i].as<std::string>();
    if (!is_known_suite(name)) throw ConfigError("suites: unknown suite '" + name + "'");
    if (std::find(sc.suites.begin(), sc.suites.end(), name) == sc.suites.end()) {
      sc.suites.push_back(name);
    }
  }

  sc.grids = parse_grids(root["grids"]);
  sc.settings = parse_settings(root["settings"]);
  if (sc.settings.spectrum_levels >= sc.n_max) {
    throw ConfigError("settings.spectrum_levels must be below truncation.n_max");
  }

  if (const YAML::Node tol = root["tolerances"]) {
    if (!tol.IsMap()) throw ConfigError("tolerances: expected a mapping");
    for (const auto& kv : tol) {
      const auto key = kv.first.as<std::string>();
      if (!valid_tolerance_key(key)) throw ConfigError("tolerances: unknown key '" + key + "'");
      const double v = as_double(kv.second, "tolerances." + key);
      if (!(v > 0.0)) throw ConfigError("tolerances." + key + " must be strictly positive");
      sc.tolerances[key] = v;
    }
  }

  validate_suites(sc, sc.suites);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

ordered_json to_json(const Scenario& sc) {
  const ModelParams& p = sc.params;
  ordered_json lambda = ordered_json::array();
  for (const cplx& v : p.lambda.values()) lambda.push_back({v.real(), v.imag()});
  ordered_json params = {{"omega_c", p.omega_c},
                         {"xi", p.xi},
                         {"gauge", p.gauge == Gauge::plus_z ? "plus_z" : "minus_z"},
                         {"gamma", p.gamma},
                         {"beta", p.beta},
                         {"k", p.k},
                         {"epsilon", p.epsilon},
                         {"lambda", lambda}};

  ordered_json grids = ordered_json::object();
  auto axis = [&](const char* key, const std::vector<double>& v) {
    if (!v.empty()) grids[key] = v;
  };
  const Grids& g = sc.grids;
  axis("omega_c", g.omega_c);
  axis("xi", g.xi);
  axis("gamma", g.gamma);
  axis("beta", g.beta);
  axis("omega", g.omega);
  if (!g.omega_pairs.empty()) {
    ordered_json pairs = ordered_json::array();
    for (const auto& [a, b] : g.omega_pairs) pairs.push_back({a, b});
    grids["omega_pairs"] = pairs;
  }
  axis("r", g.r);
  axis("eta", g.eta);
  axis("phi", g.phi);
  axis("psi", g.psi);
  axis("tau", g.tau);

  const Settings& s = sc.settings;
  ordered_json settings = {{"spectrum_levels", s.spectrum_levels},
                           {"susy_n_max", s.susy_n_max},
                           {"susy_margin", s.susy_margin},
                           {"state_n_max", s.state_n_max},
                           {"moment_n_max", s.moment_n_max},
                           {"q_moment_n_max", s.q_moment_n_max},
                           {"radial_nodes", s.radial_nodes},
                           {"identity_n_max", s.identity_n_max},
                           {"identity_interior", s.identity_interior},
                           {"tail_tol", s.tail_tol}};

  ordered_json tol = ordered_json::object();
  for (const auto& [k, v] : sc.tolerances) tol[k] = v;

  return {{"name", sc.name},     {"params", params},     {"truncation", {{"n_max", sc.n_max}}},
          {"suites", sc.suites}, {"grids", grids},       {"settings", settings},
          {"tolerances", tol}};
}

}  // namespace qvcs::report
