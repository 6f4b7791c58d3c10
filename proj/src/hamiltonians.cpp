#include "qvcs/hamiltonians.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qvcs/errors.hpp"

namespace qvcs {
namespace {

SoKind kind_of(Branch b) { return b == Branch::rashba_only ? SoKind::rashba : SoKind::dresselhaus; }

double coupling_of(const ModelParams& p, Branch b) {
  return b == Branch::rashba_only ? p.gamma : p.beta;
}

// Number index at which lambda enters the coupling of level n, and the phase p
// of <u2|H|u1> per unit signed coupling strength.
struct LevelCoupling {
  double lambda_abs;
  cplx phase;
};

LevelCoupling level_coupling(const ModelParams& p, std::size_t n, Branch b) {
  const cplx lam = b == Branch::rashba_only ? p.lambda(n - 1) : p.lambda(n);
  const double a = std::abs(lam);
  if (a == 0.0) throw DomainError("lambda vanishes at level " + std::to_string(n));
  const cplx unit = lam / a;
  return {a, b == Branch::rashba_only ? kI * unit : unit};
}

void check_closed_form(const ModelParams& p, Branch b, std::size_t n) {
  p.validate();
  if (n < 1) throw IndexError("closed-form level index must be >= 1");
  if (p.k != 1) throw ConfigError("closed-form spectrum is available for k = 1 only");
  const SoKind kind = kind_of(b);
  const int hermitian_eps = kind == SoKind::rashba ? -1 : 1;
  if (p.epsilon_for(kind) != hermitian_eps) {
    throw ConfigError("closed-form spectrum needs the Hermitian epsilon of the branch");
  }
}

struct Level {
  double e_plus;
  double e_minus;
  double theta;
  bool degenerate;
};

Level level(const ModelParams& p, std::size_t n, Branch b) {
  const double delta = branch_delta(p, b);
  const double c = coupling_of(p, b);
  const LevelCoupling lc = level_coupling(p, n, b);
  const double g = c * lc.lambda_abs * p.omega_c * std::sqrt(static_cast<double>(n));
  const double mean = p.omega_c * static_cast<double>(n);
  const double radius = std::hypot(delta / 2.0, g);
  Level out{};
  if (std::abs(delta) <= 1e-15 * p.omega_c) {
    out.degenerate = c != 0.0;
    out.theta = c > 0.0 ? kPi / 4.0 : (c < 0.0 ? -kPi / 4.0 : 0.0);
    out.e_plus = mean - radius;
    out.e_minus = mean + radius;
  } else {
    const double sgn = delta > 0.0 ? 1.0 : -1.0;
    out.degenerate = false;
    out.theta = 0.5 * std::atan(2.0 * g / delta);
    out.e_plus = mean - sgn * radius;
    out.e_minus = mean + sgn * radius;
  }
  return out;
}

double h0_energy(const ModelParams& p, Spin s, std::size_t n) {
  return p.omega_c * (static_cast<double>(n) + 0.5) - spin_sign(s) * p.omega_c * p.xi_eff();
}

}  // namespace

LambdaSpec::LambdaSpec(std::vector<cplx> values) : values_(std::move(values)) {
  if (values_.empty()) throw ConfigError("lambda table must not be empty");
}

int ModelParams::epsilon_for(SoKind kind) const {
  if (epsilon != 0) return epsilon;
  return kind == SoKind::rashba ? -1 : 1;
}

void ModelParams::validate() const {
  if (!std::isfinite(omega_c) || omega_c <= 0.0) throw ConfigError("omega_c must be > 0");
  if (!std::isfinite(xi) || !std::isfinite(gamma) || !std::isfinite(beta)) {
    throw ConfigError("model parameters must be finite");
  }
  if (k < 1) throw ConfigError("SO order k must be >= 1");
  if (epsilon < -1 || epsilon > 1) throw ConfigError("epsilon must be -1, +1 or 0 (auto)");
}

FockOperator build_h0(const ModelParams& params, const FockTruncation& trunc) {
  params.validate();
  if (!trunc.is_standard()) throw ConfigError("build_h0 requires standard weights x_n = n");
  const std::size_t d = trunc.spinor_dim();
  CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t n = 0; n <= trunc.n_max(); ++n) {
    for (Spin s : {Spin::plus, Spin::minus}) {
      const auto i = static_cast<Eigen::Index>(basis_index(s, n));
      h(i, i) = h0_energy(params, s, n);
    }
  }
  return FockOperator(std::move(h));
}

SoTerm build_so_generalized(const ModelParams& params, const FockTruncation& trunc, SoKind kind) {
  params.validate();
  const auto d = static_cast<Eigen::Index>(trunc.dim());
  CMatrix lam = CMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    const cplx v = params.lambda(static_cast<std::size_t>(n));
    if (v == cplx(0.0)) throw DomainError("lambda(n) vanishes at n = " + std::to_string(n));
    lam(n, n) = v;
  }
  const LadderOperators ops = ladder(trunc);
  CMatrix bk = CMatrix::Identity(d, d);
  for (int i = 0; i < params.k; ++i) bk = bk * ops.a;
  const CMatrix bdk = bk.adjoint();

  const int eps = params.epsilon_for(kind);
  const CMatrix lam_bar = lam.adjoint();
  CMatrix b_plus;
  CMatrix b_minus;
  if (eps > 0) {
    b_plus = bk * lam;
    b_minus = lam_bar * bdk;
  } else {
    b_plus = bdk * lam;
    b_minus = -(lam_bar * bk);
  }
  const FockOperator v = spin_kron(pauli::minus(), b_plus) + spin_kron(pauli::plus(), b_minus);
  const cplx prefactor = kind == SoKind::rashba ? kI * params.omega_c * params.gamma
                                                : cplx(params.omega_c * params.beta);
  FockOperator op = prefactor * v;
  const double res = op.hermiticity_residual();
  return {std::move(op), res};
}

FockOperator build_hamiltonian(const ModelParams& params, const FockTruncation& trunc) {
  FockOperator h = build_h0(params, trunc);
  if (params.gamma != 0.0) h = h + build_so_generalized(params, trunc, SoKind::rashba).op;
  if (params.beta != 0.0) h = h + build_so_generalized(params, trunc, SoKind::dresselhaus).op;
  return h;
}

double branch_delta(const ModelParams& params, Branch branch) {
  const double sign = branch == Branch::rashba_only ? 1.0 : -1.0;
  return params.omega_c * (sign + 2.0 * params.xi_eff());
}

SpectrumRow closed_form_spectrum(const ModelParams& params, std::size_t n, Branch branch) {
  check_closed_form(params, branch, n);
  const Level here = level(params, n, branch);
  const Level next = level(params, n + 1, branch);
  SpectrumRow row;
  row.n = n;
  row.e_plus = here.e_plus;
  row.e_minus = here.e_minus;
  row.theta_n = here.theta;
  row.delta_gap = here.e_minus - next.e_plus;
  row.delta = branch_delta(params, branch);
  row.degenerate_delta = here.degenerate;
  return row;
}

cplx eigenstate_phase(const ModelParams& params, std::size_t n, Branch branch) {
  check_closed_form(params, branch, n);
  return -level_coupling(params, n, branch).phase;
}

std::pair<SpinorState, SpinorState> closed_form_eigenstates(const ModelParams& params,
                                                            const FockTruncation& trunc,
                                                            std::size_t n, Branch branch) {
  check_closed_form(params, branch, n);
  if (n > trunc.n_max()) throw IndexError("closed-form level exceeds n_max");
  const Level lv = level(params, n, branch);
  const cplx w = -level_coupling(params, n, branch).phase;
  const double c = std::cos(lv.theta);
  const double s = std::sin(lv.theta);
  const std::size_t nm = trunc.n_max();
  const std::size_t i1 = branch == Branch::rashba_only ? basis_index(Spin::plus, n - 1)
                                                       : basis_index(Spin::plus, n);
  const std::size_t i2 = branch == Branch::rashba_only ? basis_index(Spin::minus, n)
                                                       : basis_index(Spin::minus, n - 1);
  CVector plus = CVector::Zero(static_cast<Eigen::Index>(2 * (nm + 1)));
  CVector minus = plus;
  plus(static_cast<Eigen::Index>(i1)) = c;
  plus(static_cast<Eigen::Index>(i2)) = w * s;
  minus(static_cast<Eigen::Index>(i1)) = -std::conj(w) * s;
  minus(static_cast<Eigen::Index>(i2)) = c;
  return {SpinorState(std::move(plus)), SpinorState(std::move(minus))};
}

ClosedFormBasis closed_form_eigenbasis(const ModelParams& params, const FockTruncation& trunc,
                                       Branch branch) {
  const std::size_t nm = trunc.n_max();
  ClosedFormBasis out;
  out.states.reserve(trunc.spinor_dim());
  out.energies.reserve(trunc.spinor_dim());
  // Column 2m + s holds the state that reduces to chi^s Phi_m at zero coupling.
  for (std::size_t m = 0; m <= nm; ++m) {
    for (Spin s : {Spin::plus, Spin::minus}) {
      const bool rashba = branch == Branch::rashba_only;
      // Level whose dressed state contains chi^s Phi_m, or 0 if uncoupled.
      std::size_t lvl = 0;
      if (rashba) {
        lvl = s == Spin::plus ? (m < nm ? m + 1 : 0) : m;
      } else {
        lvl = s == Spin::plus ? m : (m < nm ? m + 1 : 0);
      }
      if (lvl == 0) {
        out.states.push_back(SpinorState::basis(nm, s, m));
        out.energies.push_back(h0_energy(params, s, m));
        continue;
      }
      auto pair = closed_form_eigenstates(params, trunc, lvl, branch);
      const SpectrumRow row = closed_form_spectrum(params, lvl, branch);
      if (s == Spin::plus) {
        out.states.push_back(std::move(pair.first));
        out.energies.push_back(row.e_plus);
      } else {
        out.states.push_back(std::move(pair.second));
        out.energies.push_back(row.e_minus);
      }
    }
  }
  return out;
}

Eigenpairs diagonalize(const FockOperator& h, double hermitian_tol) {
  const double res = h.hermiticity_residual();
  if (res > hermitian_tol) {
    throw ValidationError("diagonalize: operator is not Hermitian (residual " +
                          std::to_string(res) + ")");
  }
  const CMatrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::size_t pair_by_overlap(const Eigenpairs& eig, const SpinorState& state) {
  if (static_cast<std::size_t>(eig.vectors.rows()) != state.dim()) {
    throw ShapeError("pair_by_overlap: dimension mismatch");
  }
  const Eigen::VectorXd overlaps = (eig.vectors.adjoint() * state.coeffs()).cwiseAbs();
  std::size_t best = 0;
  for (Eigen::Index j = 1; j < overlaps.size(); ++j) {
    const double diff = overlaps(j) - overlaps(static_cast<Eigen::Index>(best));
    if (diff > 1e-12) {
      best = static_cast<std::size_t>(j);
    } else if (std::abs(diff) <= 1e-12 &&
               eig.values(j) < eig.values(static_cast<Eigen::Index>(best))) {
      best = static_cast<std::size_t>(j);
    }
  }
  return best;
}

double eigenspace_residual(const Eigenpairs& eig, const SpinorState& state, double energy,
                           double cluster_tol) {
  if (static_cast<std::size_t>(eig.vectors.rows()) != state.dim()) {
    throw ShapeError("eigenspace_residual: dimension mismatch");
  }
  CVector projected = CVector::Zero(eig.vectors.rows());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    if (std::abs(eig.values(j) - energy) <= cluster_tol) {
      const auto v = eig.vectors.col(j);
      projected += v * v.dot(state.coeffs());
    }
  }
  return (projected - state.coeffs()).norm();
}

FockOperator passage_operator(const std::vector<SpinorState>& states) {
  if (states.empty()) throw RankError("passage operator needs a non-empty eigenset");
  const std::size_t d = states.front().dim();
  if (states.size() != d) {
    throw RankError("passage operator needs " + std::to_string(d) + " states, got " +
                    std::to_string(states.size()));
  }
  CMatrix u(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) {
    if (states[j].dim() != d) throw ShapeError("passage operator: mixed state dimensions");
    u.col(static_cast<Eigen::Index>(j)) = states[j].coeffs();
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(u);
  qr.setThreshold(1e-10);
  if (static_cast<std::size_t>(qr.rank()) != d) {
    throw RankError("passage operator: eigenset is rank deficient (rank " +
                    std::to_string(qr.rank()) + " of " + std::to_string(d) + ")");
  }
  return FockOperator(std::move(u));
}

WeakCouplingModel::WeakCouplingModel(double omega_plus, double omega_minus, double gc)
    : omega_plus_(omega_plus), omega_minus_(omega_minus), gc_(gc) {
  if (!(omega_plus > 0.0) || !(omega_minus > 0.0)) {
    throw DomainError("weak-coupling frequencies must be positive");
  }
}

double WeakCouplingModel::log_rho(Spin s, std::size_t n) const {
  const double x = static_cast<double>(n);
  return std::lgamma(x + 1.0) + x * std::log(omega(s));
}

double WeakCouplingModel::rho(Spin s, std::size_t n) const { return std::exp(log_rho(s, n)); }

WeakCouplingModel weak_coupling_model(const ModelParams& params, SoKind coupling) {
  params.validate();
  const double gc = -4.0 * params.xi_eff();
  const double denom = 2.0 - gc;
  if (std::abs(denom) <= 1e-14) throw SingularParameterError("weak-coupling model singular at gc = 2");
  const double c = coupling == SoKind::rashba ? params.gamma : params.beta;
  const double shift = 2.0 * c * c / denom;
  return WeakCouplingModel(params.omega_c * (1.0 - shift), params.omega_c * (1.0 + shift), gc);
}

double interior_max_abs(const CMatrix& op, std::size_t n_interior) {
  const auto d = static_cast<Eigen::Index>(2 * (n_interior + 1));
  if (d > op.rows() || d > op.cols()) throw IndexError("interior block exceeds operator size");
  return max_abs(op.topLeftCorner(d, d));
}

SusyReport susy_check(const ModelParams& params, const FockTruncation& trunc, std::size_t margin) {
  params.validate();
  if (!trunc.is_standard()) throw ConfigError("susy_check requires standard weights x_n = n");
  if (margin >= trunc.n_max()) throw ConfigError("susy margin leaves no interior block");
  const LadderOperators ops = ladder(trunc);
  const Mat2 p_plus = (Mat2() << 1, 0, 0, 0).finished();
  const Mat2 p_minus = (Mat2() << 0, 0, 0, 1).finished();
  const double w = params.omega_c;
  const CMatrix b = std::sqrt(w) * ops.a;
  const CMatrix bd = b.adjoint();
  const FockOperator h_susy = spin_kron(p_plus, bd * b) + spin_kron(p_minus, b * bd);
  const FockOperator q = spin_kron(pauli::minus(), b);
  const FockOperator a_prime = lift_to_spinor(ops.a);
  const FockOperator qd = q.adjoint();
  const std::size_t interior = trunc.n_max() - margin;

  SusyReport r{};
  r.interior_n_max = interior;
  r.anticommutator_residual = interior_max_abs((q * qd + qd * q - h_susy).matrix(), interior);
  r.commutator_residual = interior_max_abs(
      (h_susy * a_prime - a_prime * h_susy + cplx(w) * a_prime).matrix(), interior);
  r.nilpotency_residual = max_abs((q * q).matrix());
  return r;
}

}  // namespace qvcs
