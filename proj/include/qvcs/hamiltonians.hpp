#pragma once

// Zeeman and spin-orbit Landau-level Hamiltonians on C^2 (x) H_N, closed-form
// spectra and eigenstates, and a dense Hermitian eigensolver used as oracle.
//
// Units: hbar = 1 and all energies are in the same units as omega_c. The
// dimensionful ladder b = sqrt(2 M hbar omega_c) b' never appears; only the
// dimensionless b' (x_n = n) is represented.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "qvcs/fock.hpp"
#include "qvcs/linalg.hpp"

namespace qvcs {

/// plus_z: field along +e_z (xi_eff = xi). minus_z: field along -e_z, where the
/// Zeeman parameter is xi' = -xi.
enum class Gauge { plus_z, minus_z };

enum class SoKind { rashba, dresselhaus };

/// lambda(N) as a function of the number index: values[min(n, size - 1)].
class LambdaSpec {
 public:
  static LambdaSpec constant(cplx value) { return LambdaSpec({value}); }
  static LambdaSpec table(std::vector<cplx> values) { return LambdaSpec(std::move(values)); }

  cplx operator()(std::size_t n) const { return values_[std::min(n, values_.size() - 1)]; }
  const std::vector<cplx>& values() const noexcept { return values_; }

 private:
  explicit LambdaSpec(std::vector<cplx> values);
  std::vector<cplx> values_;
};

struct ModelParams {
  double omega_c = 1.0;
  double xi = 0.0;
  Gauge gauge = Gauge::plus_z;
  double gamma = 0.0;  // Rashba strength
  double beta = 0.0;   // Dresselhaus strength
  int k = 1;
  /// +1 or -1 selects the branch of B^{+-}_{k,eps}; 0 picks the value that
  /// makes the term Hermitian for any lambda (Rashba -1, Dresselhaus +1).
  int epsilon = 0;
  LambdaSpec lambda = LambdaSpec::constant(cplx(0.0, -1.0));

  /// Zeeman parameter entering the active gauge: xi, or xi' = -xi.
  double xi_eff() const { return gauge == Gauge::plus_z ? xi : -xi; }
  int epsilon_for(SoKind kind) const;
  /// Throws ConfigError on omega_c <= 0, k < 1, or epsilon outside {-1, 0, 1}.
  void validate() const;
};

/// omega_c (b'^dag b' + 1/2) sigma_0 - omega_c xi_eff sigma_z, so that
/// chi^{+-} (x) Phi_n carries omega_c (n + 1/2) -+ omega_c xi_eff.
/// Requires standard weights x_n = n.
FockOperator build_h0(const ModelParams& params, const FockTruncation& trunc);

struct SoTerm {
  FockOperator op;
  double hermiticity_residual;
};

/// V_{k,eps} = B^+ sigma_- + B^- sigma_+ with B^+ = b'^{-eps k} lambda(N),
/// B^- = eps conj(lambda(N)) b'^{eps k}, where b'^{-k} = b'^k and b'^{+k} =
/// (b'^dag)^k. Returns i omega_c gamma V (Rashba) or omega_c beta V
/// (Dresselhaus). Throws DomainError if lambda(n) = 0 for some n <= n_max.
SoTerm build_so_generalized(const ModelParams& params, const FockTruncation& trunc, SoKind kind);

/// h0 + Rashba (if gamma != 0) + Dresselhaus (if beta != 0).
FockOperator build_hamiltonian(const ModelParams& params, const FockTruncation& trunc);

enum class Branch { rashba_only, dresselhaus_only };

struct SpectrumRow {
  std::size_t n = 0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  /// Signed mixing angle, tan 2 theta = 2 sqrt(n) |lambda| c omega_c / delta.
  double theta_n = 0.0;
  /// E^-_n - E^+_{n+1}.
  double delta_gap = 0.0;
  double delta = 0.0;
  /// delta = 0: theta_n = sign(c) pi/4 and E^{+-} = omega_c n -+ sqrt(n) |c| omega_c.
  bool degenerate_delta = false;
};

double branch_delta(const ModelParams& params, Branch branch);

/// Closed form for the Rashba-only (beta = 0) or Dresselhaus-only (gamma = 0)
/// Hamiltonian with k = 1 and the branch's Hermitian epsilon. n >= 1.
SpectrumRow closed_form_spectrum(const ModelParams& params, std::size_t n, Branch branch);

/// psi^+_n = cos(theta) u1 + w sin(theta) u2, psi^-_n = -conj(w) sin(theta) u1 + cos(theta) u2,
/// where (u1, u2) = (chi^+ Phi_{n-1}, chi^- Phi_n) for Rashba and
/// (chi^+ Phi_n, chi^- Phi_{n-1}) for Dresselhaus. This is the rotation
/// (cos, sin) / (-sin, cos) written in the rephased basis (u1, w u2); the unit
/// phase w = -<u2|H|u1> / (c |<u2|H|u1>| / |c|) makes both states exact
/// eigenvectors (w = -1 for lambda = -i Rashba, w = i for lambda = -i
/// Dresselhaus) and reduces them to (u1, u2) at zero coupling.
std::pair<SpinorState, SpinorState> closed_form_eigenstates(const ModelParams& params,
                                                            const FockTruncation& trunc,
                                                            std::size_t n, Branch branch);

/// Phase w of closed_form_eigenstates for level n.
cplx eigenstate_phase(const ModelParams& params, std::size_t n, Branch branch);

/// Ordered closed-form eigenbasis: column j is the eigenstate that reduces to
/// basis vector j at zero coupling, with its energy. The uncoupled vacuum
/// state and the uncoupled edge state at n_max are included, so the set is
/// complete on the truncation.
struct ClosedFormBasis {
  std::vector<SpinorState> states;
  std::vector<double> energies;
};

ClosedFormBasis closed_form_eigenbasis(const ModelParams& params, const FockTruncation& trunc,
                                       Branch branch);

struct Eigenpairs {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;         // orthonormal columns
};

/// Dense Hermitian eigendecomposition. Throws ValidationError if
/// max |H - H^dagger| > hermitian_tol.
Eigenpairs diagonalize(const FockOperator& h, double hermitian_tol = 1e-12);

/// Column with maximal |<v|state>|; ties (within 1e-12) go to lower energy,
/// then lower index.
std::size_t pair_by_overlap(const Eigenpairs& eig, const SpinorState& state);

/// ||P state - state|| with P the projector onto eigenvectors whose
/// eigenvalue lies within cluster_tol of energy.
double eigenspace_residual(const Eigenpairs& eig, const SpinorState& state, double energy,
                           double cluster_tol = 1e-8);

/// U = sum_j |state_j><basis_j|. Throws RankError unless the states form a
/// full-rank set of the right size.
FockOperator passage_operator(const std::vector<SpinorState>& states);

/// Weak-coupling frequencies omega_{+-} = omega_c (1 -+ 2 c^2 / (2 - gc)) with
/// gc = -4 xi_eff, and rho_{+-}(n) = n! omega_{+-}^n.
class WeakCouplingModel {
 public:
  WeakCouplingModel(double omega_plus, double omega_minus, double gc);

  double omega_plus() const noexcept { return omega_plus_; }
  double omega_minus() const noexcept { return omega_minus_; }
  double omega(Spin s) const noexcept { return s == Spin::plus ? omega_plus_ : omega_minus_; }
  double gc() const noexcept { return gc_; }

  double rho(Spin s, std::size_t n) const;
  double log_rho(Spin s, std::size_t n) const;
  /// omega_{+-} n, the energies with the constant offset dropped.
  double energy(Spin s, std::size_t n) const { return omega(s) * static_cast<double>(n); }

 private:
  double omega_plus_;
  double omega_minus_;
  double gc_;
};

/// Uses gamma (rashba) or beta substituted for gamma (dresselhaus).
/// Throws SingularParameterError at gc = 2.
WeakCouplingModel weak_coupling_model(const ModelParams& params, SoKind coupling = SoKind::rashba);

struct SusyReport {
  double anticommutator_residual;  // ||{Q, Q^dag} - H^SUSY||
  double commutator_residual;      // ||[H^SUSY, A'] + omega_c A'||
  double nilpotency_residual;      // ||Q^2||
  std::size_t interior_n_max;
};

/// H^SUSY = omega_c diag(b'^dag b', b' b'^dag), Q = sqrt(omega_c) b' sigma_-,
/// A' = I_2 (x) b'. Residuals in max norm on number indices <= n_max - margin.
SusyReport susy_check(const ModelParams& params, const FockTruncation& trunc,
                      std::size_t margin = 2);

/// Max |entry| of op restricted to number indices 0 .. n_interior.
double interior_max_abs(const CMatrix& op, std::size_t n_interior);

}  // namespace qvcs
