#pragma once

// The four coherent-state families on C^2 (x) H_N, their normalizations, the
// displacement-operator realization, linear combinations and time evolution.
//
// Every family state |.;+-> carries the same normalization: each spin label
// has norm^2 close to 1/2 (exactly 1/2 for the scalar-weight families) and the
// two labels sum to 1 up to the truncation tail.

#include <cstddef>
#include <vector>

#include "qvcs/fock.hpp"
#include "qvcs/hamiltonians.hpp"
#include "qvcs/linalg.hpp"
#include "qvcs/quaternion.hpp"

namespace qvcs {

enum class CSKind { canonical, energy_qvcs, vcs_diagonal, q_qvcs };

const char* to_string(CSKind kind);

inline constexpr double kDefaultTailTol = 1e-12;

/// A truncated family state and the series mass excluded by the cutoff,
/// relative to the full norm.
struct FamilyState {
  SpinorState state;
  double tail;
};

/// P(X > n_max) for X ~ Poisson(mean): the relative mass of sum_{n > n_max}
/// mean^n / n! against e^mean.
double poisson_tail(std::size_t n_max, double mean);

/// Smallest n_max with poisson_tail(n_max, mean) <= tol.
std::size_t suggest_n_max(double mean, double tol = kDefaultTailTol);

/// 2 exp(r^2 / omega).
double energy_normalization(double r, double omega);

/// exp(r1^2 / omega_plus) + exp(r2^2 / omega_minus).
double vcs_normalization(double r1, double r2, double omega_plus, double omega_minus);

/// exp(-r^2/2)/sqrt(2) sum_n q^n / sqrt(n!) chi^s (x) Phi_n. Throws TailError
/// when the excluded mass exceeds tail_tol.
FamilyState canonical_qvcs(const Quaternion& q, Spin s, std::size_t n_max,
                           double tail_tol = kDefaultTailTol);

/// N(r)^{-1/2} sum_n q^n / sqrt(n! omega^n) chi^s (x) Phi_n, N(r) = 2 exp(r^2/omega).
FamilyState energy_qvcs(const Quaternion& q, Spin s, double omega, std::size_t n_max,
                        double tail_tol = kDefaultTailTol);

/// N(Z)^{-1/2} sum_n z_s^n / sqrt(rho_s(n)) chi^s (x) Phi_n with z_+ = z1,
/// z_- = z2 and rho_s(n) = n! omega_s^n.
FamilyState vcs_diagonal(cplx z1, cplx z2, Spin s, double omega_plus, double omega_minus,
                         std::size_t n_max, double tail_tol = kDefaultTailTol);

/// N(r~)^{-1/2} sum_n R(n)^{-1/2} Q^n chi^s (x) Phi_n with
/// R(n) = diag(rho_+(n), rho_-(n)). The tail is the larger of the two
/// component tails.
FamilyState q_qvcs(const QuaternionQ& q, Spin s, double omega_plus, double omega_minus,
                   std::size_t n_max, double tail_tol = kDefaultTailTol);

struct DisplacementResult {
  SpinorState state;
  /// | ||exp(G) v||^2 - ||v||^2 |, which vanishes for an exactly unitary exponential.
  double norm_drift;
};

/// (1/omega)(q (x) a^dag - q^dag (x) a) for the ladder with x_n = n omega.
FockOperator displacement_generator(const Quaternion& q, double omega, std::size_t n_max);

/// (1/sqrt 2) exp(G) chi^s (x) Phi_0 with G = displacement_generator(q, omega).
/// Throws NumericalError if the norm drift exceeds 1e-10.
DisplacementResult displacement_qvcs(const Quaternion& q, Spin s, double omega,
                                     std::size_t n_max);

/// c_plus |plus> + c_minus |minus>. Throws ValidationError unless
/// |c_plus|^2 + |c_minus|^2 = 1 within 1e-12.
SpinorState linear_combination(cplx c_plus, cplx c_minus, const SpinorState& plus,
                               const SpinorState& minus);

/// Energies E^s_n attached to the basis components chi^s (x) Phi_n.
class EnergyTable {
 public:
  EnergyTable(std::vector<double> plus, std::vector<double> minus);

  /// omega_c (n + 1/2) -+ omega_c xi_eff.
  static EnergyTable zeeman(const ModelParams& params, std::size_t n_max);
  /// omega_{+-} n.
  static EnergyTable weak_coupling(const WeakCouplingModel& model, std::size_t n_max);
  /// omega n on both spin labels.
  static EnergyTable scalar(double omega, std::size_t n_max);

  std::size_t n_max() const noexcept { return plus_.size() - 1; }
  double energy(Spin s, std::size_t n) const;

  /// diag(E) as a spinor operator.
  FockOperator as_operator() const;

 private:
  std::vector<double> plus_;
  std::vector<double> minus_;
};

/// Multiplies component (s, n) by exp(-i tau E^s_n). Throws IndexError if the
/// table is shorter than the state.
SpinorState evolve(const SpinorState& state, double tau, const EnergyTable& energies);

/// exp(-i t H) for H = energies.as_operator(), built by matrix exponential.
FockOperator evolution_operator(double t, const EnergyTable& energies);

}  // namespace qvcs
