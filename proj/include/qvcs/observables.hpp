#pragma once

// Ladder, quadrature and number operators on C^2 (x) H_N, expectations in the
// coherent-state families and the uncertainty relation.
//
// Expectations are <state|op|state> without renormalization: each family
// state |.;+-> carries its own norm (1/2 for the scalar-weight families, F_+-
// for the Q family), and the closed forms include that factor.

#include <cstddef>
#include <string>
#include <vector>

#include "qvcs/fock.hpp"
#include "qvcs/linalg.hpp"
#include "qvcs/quaternion.hpp"

namespace qvcs {

/// <state|op|state>. Throws ShapeError on dimension mismatch.
cplx expect(const FockOperator& op, const SpinorState& state);

/// A = I_2 (x) a for the truncation's weights, with Q = (A + A^dag)/sqrt 2,
/// P = (A - A^dag)/(i sqrt 2) and N = I_2 (x) N'.
struct QuadraturePair {
  FockOperator a;
  FockOperator a_dag;
  FockOperator number;
  FockOperator q_op;
  FockOperator p_op;
};

QuadraturePair quadrature_pair(const FockTruncation& trunc);

/// calA chi^s Phi_n = sqrt(n omega_s) chi^s Phi_{n-1}, block diagonal in spin,
/// with calQ, calP and calN = diag(n omega_s) (= calA^dag calA) built as for QuadraturePair.
struct SpinLadder {
  double omega_plus;
  double omega_minus;
  FockOperator cal_a;
  FockOperator cal_a_dag;
  FockOperator number;
  FockOperator q_op;
  FockOperator p_op;
};

SpinLadder spin_ladder(double omega_plus, double omega_minus, std::size_t n_max);

/// F_+(r~) = e^{r~^2/omega_+} / (e^{r~^2/omega_+} + e^{r~^2/omega_-}); F_- likewise.
double f_weight(Spin s, double r_tilde, double omega_plus, double omega_minus);

struct ExpectationRow {
  std::string observable;
  cplx closed_form;
  cplx numeric;
  double abs_diff;
};

struct ExpectationTable {
  std::vector<ExpectationRow> rows;

  double max_abs_diff() const;
  const ExpectationRow& at(const std::string& observable) const;
};

/// Closed forms for the energy family |q;s> with ladder x_n = n omega,
/// next to expect() on the truncated state: A, A_dag, Q, P, N.
ExpectationTable qvcs_expectations(const Quaternion& q, Spin s, double omega, std::size_t n_max);

/// Closed forms for |Q;s> with calA: calA, calA_dag, calQ, calP,
/// calAAdag, calN, calQ2, calP2, dQ2, dP2, plus the identity F_+ + F_- = 1.
ExpectationTable qqvcs_expectations(const QuaternionQ& q, Spin s, double omega_plus,
                                    double omega_minus, std::size_t n_max);

/// N^{-1/2} sum_n q^n / sqrt(x_n!) chi^s (x) Phi_n for arbitrary weights, with
/// N = 2 sum_{n <= n_max} r^{2n} / x_n!. Throws TailError when the last
/// retained term carries more than tail_tol of the norm.
SpinorState generalized_qvcs(const Quaternion& q, Spin s, const FockTruncation& trunc,
                             double tail_tol = 1e-12);

struct UncertaintyResult {
  double dq2;
  double dp2;
  double lhs;    // dq2 * dp2
  double bound;  // (1/4) (N^{-1} sum (x_{n+1} - x_n) / x_n! r^{2n})^2
  bool holds;    // lhs >= bound - 1e-12
};

/// Dispersions of Q and P in generalized_qvcs(q, s, trunc), in the norm-1/2
/// convention, against the series bound.
UncertaintyResult uncertainty_product(const Quaternion& q, Spin s, const FockTruncation& trunc);

struct QDispersion {
  double dq2;
  double dp2;
  double lhs;
};

/// Numeric (Delta calQ)^2 (Delta calP)^2 in |Q;s>.
QDispersion qqvcs_dispersion(const QuaternionQ& q, Spin s, double omega_plus, double omega_minus,
                             std::size_t n_max);

/// || [Q, P] v - i [A, A^dag] v || for the truncation's quadrature pair.
double commutator_residual(const QuadraturePair& ops, const SpinorState& v);

/// (<X^2> - <X>^2) with <X^2> = ||X v||^2 for Hermitian X, compensated.
double dispersion(const FockOperator& x, const SpinorState& v);

}  // namespace qvcs
