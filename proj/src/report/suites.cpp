#include "qvcs/report/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <iterator>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include "qvcs/coherent_states.hpp"
#include "qvcs/errors.hpp"
#include "qvcs/fock.hpp"
#include "qvcs/hamiltonians.hpp"
#include "qvcs/observables.hpp"
#include "qvcs/quadrature.hpp"
#include "qvcs/quaternion.hpp"
#include "qvcs/resolution.hpp"

namespace qvcs::report {
namespace {

constexpr double kExact = std::numeric_limits<double>::min();

double default_tolerance(const std::string& check) {
  static const std::vector<std::pair<std::string, double>> table = {
      {"spectrum.zeeman", 1e-13},
      {"spectrum.rashba.energy", 1e-10},
      {"spectrum.rashba.theta", 1e-10},
      {"spectrum.rashba.eigenvector", 1e-9},
      {"spectrum.rashba.passage_unitarity", 1e-10},
      {"spectrum.rashba.passage_offdiag", 1e-9},
      {"spectrum.dresselhaus.energy", 1e-10},
      {"spectrum.dresselhaus.theta", 1e-10},
      {"spectrum.dresselhaus.eigenvector", 1e-9},
      {"spectrum.dresselhaus.passage_unitarity", 1e-10},
      {"spectrum.dresselhaus.passage_offdiag", 1e-9},
      {"susy.anticommutator", kExact},
      {"susy.nilpotency", kExact},
      {"susy.commutator", 1e-13},
      {"moments.scalar", 1e-10},
      {"moments.q_family", 1e-10},
      {"identity.energy_qvcs", 1e-8},
      {"identity.vcs_diagonal", 1e-8},
      {"identity.q_qvcs", 1e-8},
      {"identity.refinement", 1e-8},
      {"expectations.energy_qvcs", 1e-9},
      {"expectations.q_qvcs", 1e-9},
      {"uncertainty.standard", 1e-12},
      {"uncertainty.q_family", 1e-12},
      {"evolution.norm", 1e-13},
      {"evolution.group_law", 1e-12},
      {"displacement.normalization", 1e-12},
      {"displacement.eigenrelation", 1e-10},
      {"displacement.series", 1e-9},
      {"displacement.reduction", 1e-12},
  };
  for (const auto& [k, v] : table) {
    if (k == check) return v;
  }
  return 1e-10;
}

struct Task {
  ordered_json inputs;
  std::function<SuiteOutput()> run;
};

class Builder {
 public:
  Builder(const std::string& suite, const Scenario& sc, SuiteOutput& out)
      : suite_(suite), sc_(sc), out_(out) {}

  void add(const std::string& check, const ordered_json& inputs, ordered_json expected,
           ordered_json observed, double residual) {
    const std::string id = suite_ + "." + check;
    const double tol = sc_.tolerance(id, default_tolerance(id));
    add_with_pass(check, inputs, std::move(expected), std::move(observed), residual, tol,
                  std::isfinite(residual) && residual <= tol);
  }

  void add_with_pass(const std::string& check, const ordered_json& inputs, ordered_json expected,
                     ordered_json observed, double residual, double tol, bool pass) {
    out_.records.push_back(
        {suite_, suite_ + "." + check, inputs, std::move(expected), std::move(observed), residual,
         tol, pass});
  }

  double tolerance(const std::string& check) const {
    const std::string id = suite_ + "." + check;
    return sc_.tolerance(id, default_tolerance(id));
  }

 private:
  std::string suite_;
  const Scenario& sc_;
  SuiteOutput& out_;
};

std::vector<SuiteOutput> run_tasks(const std::string& suite, const Scenario& sc,
                                   const std::vector<Task>& tasks, std::size_t jobs) {
  std::vector<SuiteOutput> results(tasks.size());
  auto one = [&](std::size_t i) {
    try {
      results[i] = tasks[i].run();
    } catch (const std::exception& e) {
      SuiteOutput out;
      Builder b(suite, sc, out);
      b.add_with_pass("error", tasks[i].inputs, nullptr, e.what(),
                      std::numeric_limits<double>::quiet_NaN(), b.tolerance("error"), false);
      results[i] = std::move(out);
    }
  };
  const std::size_t workers = std::min(std::max<std::size_t>(jobs, 1), tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) one(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

std::string complex_text(cplx z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string im = format_double(z.imag());
  if (im[0] != '-') im = "+" + im;
  return format_double(z.real()) + im + "i";
}

ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

std::string params_text(const ordered_json& inputs) {
  std::string s;
  for (const auto& [k, v] : inputs.items()) {
    if (!s.empty()) s += ";";
    s += k + "=" + (v.is_number() ? format_double(v.get<double>()) : v.get<std::string>());
  }
  return s;
}

template <typename T>
std::vector<T> or_default(const std::vector<T>& v, T fallback) {
  return v.empty() ? std::vector<T>{fallback} : v;
}

// Explicit pairs, else the weak-coupling pair of the scenario model when it
// has a spin-orbit coupling.
std::vector<std::pair<double, double>> q_pairs(const Scenario& sc) {
  if (!sc.grids.omega_pairs.empty()) return sc.grids.omega_pairs;
  if (sc.params.gamma != 0.0) {
    const WeakCouplingModel m = weak_coupling_model(sc.params, SoKind::rashba);
    return {{m.omega_plus(), m.omega_minus()}};
  }
  if (sc.params.beta != 0.0) {
    const WeakCouplingModel m = weak_coupling_model(sc.params, SoKind::dresselhaus);
    return {{m.omega_plus(), m.omega_minus()}};
  }
  return {};
}

const char* spin_label(Spin s) { return s == Spin::plus ? "+" : "-"; }

struct AngleTuple {
  double eta;
  double phi;
  double psi;
};

std::vector<AngleTuple> angle_grid(const Scenario& sc) {
  std::vector<AngleTuple> out;
  for (double eta : or_default(sc.grids.eta, 0.7)) {
    for (double phi : or_default(sc.grids.phi, 1.1)) {
      for (double psi : or_default(sc.grids.psi, 0.4)) out.push_back({eta, phi, psi});
    }
  }
  return out;
}

// Component of v in the numeric eigenspace with eigenvalue within tol of e.
CVector project(const Eigenpairs& eig, const CVector& v, double e, double tol) {
  CVector out = CVector::Zero(v.size());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    if (std::abs(eig.values(j) - e) <= tol) {
      out += eig.vectors.col(j) * eig.vectors.col(j).dot(v);
    }
  }
  return out;
}

// ----------------------------------------------------------------------------

SuiteOutput spectrum_point(const Scenario& sc, const ordered_json& inputs, ModelParams p,
                           Branch branch) {
  SuiteOutput out;
  Builder b("spectrum", sc, out);
  const std::string tag = branch == Branch::rashba_only ? "rashba." : "dresselhaus.";
  const FockTruncation trunc = FockTruncation::standard(sc.n_max);
  const FockOperator h = build_hamiltonian(p, trunc);
  const Eigenpairs eig = diagonalize(h);
  const std::size_t levels = sc.settings.spectrum_levels;
  const bool rashba = branch == Branch::rashba_only;

  double energy_err = 0.0;
  double theta_err = 0.0;
  double vec_err = 0.0;
  for (std::size_t n = 1; n <= levels; ++n) {
    const SpectrumRow row = closed_form_spectrum(p, n, branch);
    const auto states = closed_form_eigenstates(p, trunc, n, branch);
    for (int k = 0; k < 2; ++k) {
      const SpinorState& psi = k == 0 ? states.first : states.second;
      const double e = k == 0 ? row.e_plus : row.e_minus;
      const double lam = eig.values(static_cast<Eigen::Index>(pair_by_overlap(eig, psi)));
      energy_err = std::max(energy_err, std::abs(e - lam) / std::max(1.0, std::abs(lam)));
      vec_err = std::max(vec_err, eigenspace_residual(eig, psi, e));
    }
    // Mixing angle read off the numeric eigenvector in the psi^+ eigenspace.
    const double e = row.e_plus;
    const CVector v = project(eig, states.first.coeffs(), e, 1e-9 * std::max(1.0, std::abs(e)));
    const std::size_t i1 = rashba ? basis_index(Spin::plus, n - 1) : basis_index(Spin::plus, n);
    const std::size_t i2 = rashba ? basis_index(Spin::minus, n) : basis_index(Spin::minus, n - 1);
    const cplx w = eigenstate_phase(p, n, branch);
    const cplx c1 = v(static_cast<Eigen::Index>(i1));
    const cplx c2 = v(static_cast<Eigen::Index>(i2));
    const double theta_num = std::atan(std::real(c2 / (w * c1)));
    theta_err = std::max(theta_err, std::abs(theta_num - row.theta_n));
  }
  b.add(tag + "energy", inputs, "closed form E+-_n", "dense eigenvalues", energy_err);
  b.add(tag + "theta", inputs, "closed form theta_n", "theta from numeric eigenvectors", theta_err);
  b.add(tag + "eigenvector", inputs, "closed form psi+-_n", "numeric eigenspace", vec_err);

  const ClosedFormBasis basis = closed_form_eigenbasis(p, trunc, branch);
  const FockOperator u = passage_operator(basis.states);
  const CMatrix ud = u.matrix().adjoint();
  const CMatrix gram = ud * u.matrix() - CMatrix::Identity(u.dim(), u.dim());
  CMatrix conj = ud * h.matrix() * u.matrix();
  conj.diagonal().setZero();
  b.add(tag + "passage_unitarity", inputs, 0.0, max_abs(gram), max_abs(gram));
  const double off = interior_max_abs(conj, levels);
  b.add(tag + "passage_offdiag", inputs, 0.0, off, off);
  return out;
}

SuiteOutput zeeman_point(const Scenario& sc, const ordered_json& inputs, ModelParams p) {
  SuiteOutput out;
  Builder b("spectrum", sc, out);
  const FockTruncation trunc = FockTruncation::standard(sc.n_max);
  const Eigenpairs eig = diagonalize(build_h0(p, trunc));
  std::vector<double> expected;
  for (std::size_t n = 0; n <= sc.n_max; ++n) {
    for (Spin s : {Spin::plus, Spin::minus}) {
      expected.push_back(p.omega_c * (static_cast<double>(n) + 0.5) -
                         spin_sign(s) * p.omega_c * p.xi_eff());
    }
  }
  std::sort(expected.begin(), expected.end());
  double err = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    err = std::max(err, std::abs(expected[i] - eig.values(static_cast<Eigen::Index>(i))));
  }
  b.add("zeeman", inputs, "omega_c (n + 1/2) -+ omega_c xi_eff", "dense eigenvalues", err);
  return out;
}

std::vector<Task> spectrum_tasks(const Scenario& sc) {
  std::vector<Task> tasks;
  const Grids& g = sc.grids;
  for (double wc : g.omega_c) {
    for (double xi : g.xi) {
      for (Gauge gauge : {Gauge::plus_z, Gauge::minus_z}) {
        ModelParams p = sc.params;
        p.omega_c = wc;
        p.xi = xi;
        p.gauge = gauge;
        p.gamma = p.beta = 0.0;
        ordered_json in = {{"omega_c", wc},
                           {"xi", xi},
                           {"gauge", gauge == Gauge::plus_z ? "plus_z" : "minus_z"},
                           {"n_max", sc.n_max}};
        tasks.push_back({in, [&sc, in, p] { return zeeman_point(sc, in, p); }});
      }
    }
  }
  auto branch = [&](const std::vector<double>& couplings, Branch br) {
    const bool rashba = br == Branch::rashba_only;
    for (double wc : g.omega_c) {
      for (double xi : g.xi) {
        for (double c : couplings) {
          ModelParams p = sc.params;
          p.omega_c = wc;
          p.xi = xi;
          p.gamma = rashba ? c : 0.0;
          p.beta = rashba ? 0.0 : c;
          p.k = 1;
          p.epsilon = 0;
          ordered_json in = {{"branch", rashba ? "rashba" : "dresselhaus"},
                             {"omega_c", wc},
                             {"xi", xi},
                             {rashba ? "gamma" : "beta", c},
                             {"n_max", sc.n_max},
                             {"levels", sc.settings.spectrum_levels}};
          tasks.push_back({in, [&sc, in, p, br] { return spectrum_point(sc, in, p, br); }});
        }
      }
    }
  };
  branch(g.gamma, Branch::rashba_only);
  branch(g.beta, Branch::dresselhaus_only);
  return tasks;
}

std::vector<Task> susy_tasks(const Scenario& sc) {
  std::vector<Task> tasks;
  for (double wc : or_default(sc.grids.omega_c, sc.params.omega_c)) {
    ModelParams p = sc.params;
    p.omega_c = wc;
    const std::size_t n_max = sc.settings.susy_n_max;
    const std::size_t margin =
        sc.settings.susy_margin != 0 ? sc.settings.susy_margin : n_max / 4;
    ordered_json in = {{"omega_c", wc}, {"n_max", n_max}, {"interior_n_max", n_max - margin}};
    tasks.push_back({in, [&sc, in, p, n_max, margin] {
                       SuiteOutput out;
                       Builder b("susy", sc, out);
                       const SusyReport r = susy_check(p, FockTruncation::standard(n_max), margin);
                       b.add("anticommutator", in, 0.0, r.anticommutator_residual,
                             r.anticommutator_residual);
                       b.add("commutator", in, 0.0, r.commutator_residual, r.commutator_residual);
                       b.add("nilpotency", in, 0.0, r.nilpotency_residual, r.nilpotency_residual);
                       return out;
                     }});
  }
  return tasks;
}

std::vector<Task> moments_tasks(const Scenario& sc,
                                std::shared_ptr<const RadialQuadrature> quad) {
  std::vector<Task> tasks;
  for (double w : sc.grids.omega) {
    ordered_json in = {{"family", "scalar"},
                       {"omega", w},
                       {"n_max", sc.settings.moment_n_max},
                       {"radial_nodes", quad->node_count()}};
    tasks.push_back({in, [&sc, in, quad, w] {
                       SuiteOutput out;
                       Builder b("moments", sc, out);
                       for (std::size_t n = 0; n <= sc.settings.moment_n_max; ++n) {
                         const double value = moment_ratio(n, w, *quad);
                         ordered_json pin = in;
                         pin["n"] = n;
                         b.add("scalar", pin, 1.0, value, std::abs(value - 1.0));
                         out.moments.push_back({"scalar", n, "omega=" + format_double(w),
                                                std::abs(value - 1.0), quad->node_count()});
                       }
                       return out;
                     }});
  }
  for (const auto& [wp, wm] : q_pairs(sc)) {
    const QMomentParams qp{(wp + wm) / 2.0, wp, wm};
    for (Spin s : {Spin::plus, Spin::minus}) {
      ordered_json in = {{"family", "q_family"},
                         {"spin", spin_label(s)},
                         {"omega_c", qp.omega_c},
                         {"omega_plus", wp},
                         {"omega_minus", wm},
                         {"n_max", sc.settings.q_moment_n_max},
                         {"radial_nodes", quad->node_count()}};
      tasks.push_back({in, [&sc, in, quad, qp, s] {
                         SuiteOutput out;
                         Builder b("moments", sc, out);
                         const std::string family =
                             std::string("q_family_") + (s == Spin::plus ? "plus" : "minus");
                         const std::string wtext = "omega_plus=" + format_double(qp.omega_plus) +
                                                   ";omega_minus=" + format_double(qp.omega_minus);
                         for (std::size_t n = 0; n <= sc.settings.q_moment_n_max; ++n) {
                           const double value = qqvcs_moment_value(n, qp, s, *quad);
                           ordered_json pin = in;
                           pin["n"] = n;
                           b.add("q_family", pin, 1.0, value, std::abs(value - 1.0));
                           out.moments.push_back(
                               {family, n, wtext, std::abs(value - 1.0), quad->node_count()});
                         }
                         return out;
                       }});
    }
  }
  return tasks;
}

std::vector<Task> identity_tasks(const Scenario& sc,
                                 std::shared_ptr<const RadialQuadrature> quad) {
  std::vector<Task> tasks;
  const std::size_t n_max = sc.settings.identity_n_max;
  const std::size_t interior = sc.settings.identity_interior;
  const AngularGrid grid = AngularGrid::for_truncation(n_max);
  auto grid_json = [&](const AngularGrid& g) {
    return ordered_json{{"n_phase", g.n_phase}, {"n_polar", g.n_polar}, {"n_azimuth", g.n_azimuth}};
  };
  auto add_family = [&](const std::string& check, IdentityFamily fam, ordered_json in) {
    in["n_max"] = n_max;
    in["interior"] = interior;
    in["radial_nodes"] = quad->node_count();
    in["angular_grid"] = grid_json(grid);
    tasks.push_back({in, [&sc, in, quad, fam, grid, n_max, interior, check] {
                       SuiteOutput out;
                       Builder b("identity", sc, out);
                       const IdentityReport r = assemble_identity(fam, *quad, grid, n_max, interior);
                       b.add(check, in, "I", r.interior_error, r.interior_error);
                       return out;
                     }});
  };
  for (double w : sc.grids.omega) {
    IdentityFamily fam;
    fam.kind = CSKind::energy_qvcs;
    fam.omega = w;
    add_family("energy_qvcs", fam, {{"family", "energy_qvcs"}, {"omega", w}});
  }
  for (const auto& [wp, wm] : q_pairs(sc)) {
    for (CSKind kind : {CSKind::vcs_diagonal, CSKind::q_qvcs}) {
      IdentityFamily fam;
      fam.kind = kind;
      fam.omega_plus = wp;
      fam.omega_minus = wm;
      fam.omega_c = (wp + wm) / 2.0;
      add_family(to_string(kind), fam,
                 {{"family", to_string(kind)},
                  {"omega_c", fam.omega_c},
                  {"omega_plus", wp},
                  {"omega_minus", wm}});
    }
  }
  if (!sc.grids.omega.empty()) {
    IdentityFamily fam;
    fam.kind = CSKind::energy_qvcs;
    fam.omega = sc.grids.omega.front();
    ordered_json in = {{"family", "energy_qvcs"},
                       {"omega", fam.omega},
                       {"n_max", n_max},
                       {"interior", interior},
                       {"radial_nodes", quad->node_count()}};
    tasks.push_back({in, [&sc, in, quad, fam, n_max, interior] {
                       SuiteOutput out;
                       Builder b("identity", sc, out);
                       const auto steps = identity_refinement(fam, *quad, n_max, interior);
                       ordered_json ladder = ordered_json::array();
                       for (const auto& st : steps) {
                         ladder.push_back(
                             {{"n_phase", st.n_phase}, {"interior_error", st.interior_error}});
                       }
                       const double last = steps.back().interior_error;
                       const double tol = b.tolerance("refinement");
                       b.add_with_pass("refinement", in, "strictly decreasing, finest <= tolerance",
                                       ladder, last, tol,
                                       strictly_decreasing(steps) && std::isfinite(last) &&
                                           last <= tol);
                       return out;
                     }});
  }
  return tasks;
}

void table_to_output(SuiteOutput& out, Builder& b, const std::string& family,
                     const ordered_json& in, const ExpectationTable& t) {
  const std::string ptext = params_text(in);
  ordered_json expected = ordered_json::object();
  ordered_json observed = ordered_json::object();
  for (const auto& row : t.rows) {
    expected[row.observable] = complex_json(row.closed_form);
    observed[row.observable] = complex_json(row.numeric);
    out.expectations.push_back({family, ptext, row.observable, complex_text(row.closed_form),
                                complex_text(row.numeric), row.abs_diff});
  }
  b.add(family, in, expected, observed, t.max_abs_diff());
}

std::vector<Task> expectations_tasks(const Scenario& sc) {
  std::vector<Task> tasks;
  const std::size_t n_max = sc.settings.state_n_max;
  const auto angles = angle_grid(sc);
  for (double w : sc.grids.omega) {
    for (double r : sc.grids.r) {
      for (const AngleTuple& a : angles) {
        for (Spin s : {Spin::plus, Spin::minus}) {
          ordered_json in = {{"omega", w}, {"r", r},   {"eta", a.eta},
                             {"phi", a.phi}, {"psi", a.psi}, {"spin", spin_label(s)}};
          tasks.push_back({in, [&sc, in, w, r, a, s, n_max] {
                             SuiteOutput out;
                             Builder b("expectations", sc, out);
                             const Quaternion q(r, a.eta, a.phi, a.psi);
                             table_to_output(out, b, "energy_qvcs", in,
                                             qvcs_expectations(q, s, w, n_max));
                             return out;
                           }});
        }
      }
    }
  }
  for (const auto& [wp, wm] : q_pairs(sc)) {
    for (double r : sc.grids.r) {
      for (const AngleTuple& a : angles) {
        for (Spin s : {Spin::plus, Spin::minus}) {
          ordered_json in = {{"omega_plus", wp}, {"omega_minus", wm}, {"r_tilde", r},
                             {"theta", a.eta},    {"varphi", a.phi},    {"varrho", a.psi},
                             {"spin", spin_label(s)}};
          tasks.push_back({in, [&sc, in, wp = wp, wm = wm, r, a, s, n_max] {
                             SuiteOutput out;
                             Builder b("expectations", sc, out);
                             const QuaternionQ q(r, a.eta, a.phi, a.psi);
                             table_to_output(out, b, "q_qvcs", in,
                                             qqvcs_expectations(q, s, wp, wm, n_max));
                             return out;
                           }});
        }
      }
    }
  }
  return tasks;
}

std::vector<Task> uncertainty_tasks(const Scenario& sc) {
  std::vector<Task> tasks;
  const std::size_t n_max = sc.settings.state_n_max;
  const auto angles = angle_grid(sc);
  for (double r : sc.grids.r) {
    for (const AngleTuple& a : angles) {
      for (Spin s : {Spin::plus, Spin::minus}) {
        ordered_json in = {{"weights", "x_n = n"}, {"r", r},     {"eta", a.eta},
                           {"phi", a.phi},         {"psi", a.psi}, {"spin", spin_label(s)},
                           {"n_max", n_max}};
        tasks.push_back({in, [&sc, in, r, a, s, n_max] {
                           SuiteOutput out;
                           Builder b("uncertainty", sc, out);
                           const UncertaintyResult u = uncertainty_product(
                               Quaternion(r, a.eta, a.phi, a.psi), s,
                               FockTruncation::standard(n_max));
                           b.add("standard", in, u.bound, u.lhs, std::max(0.0, u.bound - u.lhs));
                           return out;
                         }});
      }
    }
  }
  // Equal frequencies with r~^2 cos^2 theta >= 1/2 and r~^2 sin^2 theta >= 1/2.
  for (double w : or_default(sc.grids.omega, 1.0)) {
    for (double r : sc.grids.r) {
      for (const AngleTuple& a : angles) {
        const double c = std::cos(a.eta);
        const double sn = std::sin(a.eta);
        if (r * r * c * c < 0.5 || r * r * sn * sn < 0.5) continue;
        for (Spin s : {Spin::plus, Spin::minus}) {
          ordered_json in = {{"omega_plus", w}, {"omega_minus", w},  {"r_tilde", r},
                             {"theta", a.eta},  {"varphi", a.phi},   {"varrho", a.psi},
                             {"spin", spin_label(s)}, {"n_max", n_max}};
          tasks.push_back({in, [&sc, in, w, r, a, s, n_max] {
                             SuiteOutput out;
                             Builder b("uncertainty", sc, out);
                             const QDispersion d =
                                 qqvcs_dispersion(QuaternionQ(r, a.eta, a.phi, a.psi), s, w, w, n_max);
                             b.add("q_family", in, 1.0 / 16.0, d.lhs,
                                   std::max(0.0, 1.0 / 16.0 - d.lhs));
                             return out;
                           }});
        }
      }
    }
  }
  return tasks;
}

SuiteOutput evolution_point(const Scenario& sc, const ordered_json& in, const SpinorState& v,
                            const EnergyTable& table) {
  SuiteOutput out;
  Builder b("evolution", sc, out);
  double norm_err = 0.0;
  double group_err = 0.0;
  const double n0 = v.norm2();
  for (double tau : sc.grids.tau) {
    const SpinorState vt = evolve(v, tau, table);
    norm_err = std::max(norm_err, std::abs(vt.norm2() - n0));
    for (double t : sc.grids.tau) {
      const SpinorState lhs = evolution_operator(t, table) * vt;
      const SpinorState rhs = evolve(v, tau + t, table);
      group_err = std::max(group_err, (lhs.coeffs() - rhs.coeffs()).norm());
    }
  }
  b.add("norm", in, n0, "max over tau of ||v(tau)||^2", norm_err);
  b.add("group_law", in, "|.; tau + t>", "U(t) |.; tau>", group_err);
  return out;
}

std::vector<Task> evolution_tasks(const Scenario& sc) {
  std::vector<Task> tasks;
  const std::size_t n_max = sc.settings.state_n_max;
  const double tail = sc.settings.tail_tol;
  const AngleTuple a = angle_grid(sc).front();
  for (double w : or_default(sc.grids.omega, 1.0)) {
    for (double r : sc.grids.r) {
      for (Spin s : {Spin::plus, Spin::minus}) {
        ordered_json in = {{"family", "energy_qvcs"}, {"energies", "omega n"},
                           {"omega", w},              {"r", r},
                           {"eta", a.eta},            {"phi", a.phi},
                           {"psi", a.psi},            {"spin", spin_label(s)},
                           {"n_max", n_max}};
        tasks.push_back({in, [&sc, in, w, r, a, s, n_max, tail] {
                           const SpinorState v =
                               energy_qvcs(Quaternion(r, a.eta, a.phi, a.psi), s, w, n_max, tail)
                                   .state;
                           return evolution_point(sc, in, v, EnergyTable::scalar(w, n_max));
                         }});
      }
    }
  }
  for (const auto& [wp, wm] : q_pairs(sc)) {
    for (double r : sc.grids.r) {
      for (Spin s : {Spin::plus, Spin::minus}) {
        ordered_json in = {{"family", "q_qvcs"},   {"energies", "omega_+- n"},
                           {"omega_plus", wp},     {"omega_minus", wm},
                           {"r_tilde", r},         {"theta", a.eta},
                           {"varphi", a.phi},      {"varrho", a.psi},
                           {"spin", spin_label(s)}, {"n_max", n_max}};
        tasks.push_back({in, [&sc, in, wp = wp, wm = wm, r, a, s, n_max, tail] {
                           const SpinorState v =
                               q_qvcs(QuaternionQ(r, a.eta, a.phi, a.psi), s, wp, wm, n_max, tail)
                                   .state;
                           const WeakCouplingModel model(wp, wm, 0.0);
                           return evolution_point(sc, in, v,
                                                  EnergyTable::weak_coupling(model, n_max));
                         }});
      }
    }
  }
  return tasks;
}

std::vector<Task> displacement_tasks(const Scenario& sc) {
  std::vector<Task> tasks;
  const std::size_t n_max = sc.settings.state_n_max;
  const double tail = sc.settings.tail_tol;
  const auto angles = angle_grid(sc);
  const auto pairs = q_pairs(sc);

  for (double w : sc.grids.omega) {
    for (double r : sc.grids.r) {
      for (const AngleTuple& a : angles) {
        ordered_json in = {{"omega", w},     {"r", r},       {"eta", a.eta},
                           {"phi", a.phi},   {"psi", a.psi}, {"n_max", n_max}};
        tasks.push_back({in, [&sc, in, w, r, a, n_max, tail] {
                           SuiteOutput out;
                           Builder b("displacement", sc, out);
                           const Quaternion q(r, a.eta, a.phi, a.psi);
                           const LadderOperators l = ladder(FockTruncation::scaled(n_max, w));
                           const FockOperator big_a = lift_to_spinor(l.a);
                           double norm_sum = 0.0;
                           double eig_err = 0.0;
                           double series_err = 0.0;
                           double drift = 0.0;
                           for (Spin s : {Spin::plus, Spin::minus}) {
                             const SpinorState v = energy_qvcs(q, s, w, n_max, tail).state;
                             norm_sum += v.norm2();
                             const SpinorState qv = quaternion_apply_all(to_matrix(q), v);
                             eig_err = std::max(eig_err, (big_a.apply(v).coeffs() - qv.coeffs()).norm());
                             const DisplacementResult d = displacement_qvcs(q, s, w, n_max);
                             series_err = std::max(series_err, (d.state.coeffs() - v.coeffs()).norm());
                             drift = std::max(drift, d.norm_drift);
                           }
                           ordered_json fin = in;
                           fin["family"] = "energy_qvcs";
                           b.add("normalization", fin, 1.0, norm_sum, std::abs(norm_sum - 1.0));
                           b.add("eigenrelation", in, "q |q;+->", "A |q;+->", eig_err);
                           ordered_json din = in;
                           din["norm_drift"] = drift;
                           b.add("series", din, "series |q;+->", "exp(G) chi Phi_0 / sqrt 2",
                                 series_err);
                           return out;
                         }});
      }
    }
  }

  for (double r : sc.grids.r) {
    for (const AngleTuple& a : angles) {
      ordered_json in = {{"family", "canonical"}, {"r", r},       {"eta", a.eta},
                         {"phi", a.phi},          {"psi", a.psi}, {"n_max", n_max}};
      tasks.push_back({in, [&sc, in, r, a, n_max, tail] {
                         SuiteOutput out;
                         Builder b("displacement", sc, out);
                         const Quaternion q(r, a.eta, a.phi, a.psi);
                         double sum = 0.0;
                         for (Spin s : {Spin::plus, Spin::minus}) {
                           sum += canonical_qvcs(q, s, n_max, tail).state.norm2();
                         }
                         b.add("normalization", in, 1.0, sum, std::abs(sum - 1.0));
                         return out;
                       }});
    }
  }

  for (const auto& [wp, wm] : pairs) {
    for (double r : sc.grids.r) {
      for (const AngleTuple& a : angles) {
        ordered_json in = {{"omega_plus", wp}, {"omega_minus", wm}, {"r_tilde", r},
                           {"theta", a.eta},   {"varphi", a.phi},   {"varrho", a.psi},
                           {"n_max", n_max}};
        tasks.push_back({in, [&sc, in, wp = wp, wm = wm, r, a, n_max, tail] {
                           SuiteOutput out;
                           Builder b("displacement", sc, out);
                           const cplx z1 = std::polar(r, a.eta);
                           const cplx z2 = std::polar(r, -a.eta);
                           double q_sum = 0.0;
                           double d_sum = 0.0;
                           double red_diag = 0.0;
                           double red_theta0 = 0.0;
                           for (Spin s : {Spin::plus, Spin::minus}) {
                             q_sum += q_qvcs(QuaternionQ(r, a.eta, a.phi, a.psi), s, wp, wm, n_max,
                                             tail)
                                          .state.norm2();
                             const SpinorState vd =
                                 vcs_diagonal(z1, z2, s, wp, wm, n_max, tail).state;
                             d_sum += vd.norm2();
                             // varphi = 0 makes Q = diag(r e^{i theta}, r e^{-i theta}).
                             const SpinorState vq0 =
                                 q_qvcs(QuaternionQ(r, a.eta, 0.0, a.psi), s, wp, wm, n_max, tail)
                                     .state;
                             red_diag = std::max(red_diag, (vq0.coeffs() - vd.coeffs()).norm());
                             const SpinorState vt0 =
                                 q_qvcs(QuaternionQ(r, 0.0, a.phi, a.psi), s, wp, wm, n_max, tail)
                                     .state;
                             const SpinorState vr =
                                 vcs_diagonal(cplx(r), cplx(r), s, wp, wm, n_max, tail).state;
                             red_theta0 = std::max(red_theta0, (vt0.coeffs() - vr.coeffs()).norm());
                           }
                           ordered_json qin = in;
                           qin["family"] = "q_qvcs";
                           b.add("normalization", qin, 1.0, q_sum, std::abs(q_sum - 1.0));
                           ordered_json din = in;
                           din["family"] = "vcs_diagonal";
                           b.add("normalization", din, 1.0, d_sum, std::abs(d_sum - 1.0));
                           ordered_json r1 = in;
                           r1["step"] = "q_qvcs(varphi=0) -> vcs_diagonal(r e^{i theta}, r e^{-i theta})";
                           b.add("reduction", r1, "vcs_diagonal", "q_qvcs", red_diag);
                           ordered_json r2 = in;
                           r2["step"] = "q_qvcs(theta=0) -> vcs_diagonal(r, r)";
                           b.add("reduction", r2, "vcs_diagonal", "q_qvcs", red_theta0);
                           return out;
                         }});
      }
    }
  }

  for (double w : sc.grids.omega) {
    for (double r : sc.grids.r) {
      for (const AngleTuple& a : angles) {
        ordered_json in = {{"omega", w},     {"r", r},       {"phi", a.phi},
                           {"psi", a.psi},   {"n_max", n_max},
                           {"step", "vcs_diagonal(r, r; omega, omega) -> energy_qvcs(eta=0)"}};
        tasks.push_back({in, [&sc, in, w, r, a, n_max, tail] {
                           SuiteOutput out;
                           Builder b("displacement", sc, out);
                           double err = 0.0;
                           for (Spin s : {Spin::plus, Spin::minus}) {
                             const SpinorState vd =
                                 vcs_diagonal(cplx(r), cplx(r), s, w, w, n_max, tail).state;
                             const SpinorState ve =
                                 energy_qvcs(Quaternion(r, 0.0, a.phi, a.psi), s, w, n_max, tail)
                                     .state;
                             err = std::max(err, (vd.coeffs() - ve.coeffs()).norm());
                           }
                           b.add("reduction", in, "energy_qvcs", "vcs_diagonal", err);
                           return out;
                         }});
      }
    }
  }
  return tasks;
}

}  // namespace

SuiteOutput run_suite(const std::string& suite, const Scenario& sc, std::size_t jobs) {
  validate_suites(sc, {suite});
  std::vector<Task> tasks;
  if (suite == "spectrum") {
    tasks = spectrum_tasks(sc);
  } else if (suite == "susy") {
    tasks = susy_tasks(sc);
  } else if (suite == "moments" || suite == "identity") {
    auto quad = std::make_shared<const RadialQuadrature>(
        RadialQuadrature::gauss(sc.settings.radial_nodes));
    tasks = suite == "moments" ? moments_tasks(sc, quad) : identity_tasks(sc, quad);
  } else if (suite == "expectations") {
    tasks = expectations_tasks(sc);
  } else if (suite == "uncertainty") {
    tasks = uncertainty_tasks(sc);
  } else if (suite == "evolution") {
    tasks = evolution_tasks(sc);
  } else if (suite == "displacement") {
    tasks = displacement_tasks(sc);
  }
  SuiteOutput merged;
  for (auto& part : run_tasks(suite, sc, tasks, jobs)) {
    std::move(part.records.begin(), part.records.end(), std::back_inserter(merged.records));
    std::move(part.moments.begin(), part.moments.end(), std::back_inserter(merged.moments));
    std::move(part.expectations.begin(), part.expectations.end(),
              std::back_inserter(merged.expectations));
  }
  return merged;
}

}  // namespace qvcs::report
