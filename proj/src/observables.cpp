#include "qvcs/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "qvcs/coherent_states.hpp"
#include "qvcs/errors.hpp"
#include "qvcs/quadrature.hpp"

namespace qvcs {
namespace {

const double kSqrt2 = std::sqrt(2.0);

Mat2 projector(Spin s) {
  Mat2 p = Mat2::Zero();
  p(static_cast<Eigen::Index>(spin_index(s)), static_cast<Eigen::Index>(spin_index(s))) = 1.0;
  return p;
}

double squared_norm(const CVector& v) {
  CompensatedSum s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s.add(std::norm(v(i)));
  return s.value();
}

ExpectationRow row(std::string name, cplx closed, cplx numeric) {
  return {std::move(name), closed, numeric, std::abs(closed - numeric)};
}

}  // namespace

cplx expect(const FockOperator& op, const SpinorState& state) {
  if (op.dim() != state.dim()) throw ShapeError("expect: operator/state dimension mismatch");
  return state.coeffs().dot(op.matrix() * state.coeffs());
}

double dispersion(const FockOperator& x, const SpinorState& v) {
  if (x.dim() != v.dim()) throw ShapeError("dispersion: operator/state dimension mismatch");
  const CVector xv = x.matrix() * v.coeffs();
  const double mean = std::real(v.coeffs().dot(xv));
  return squared_norm(xv) - mean * mean;
}

QuadraturePair quadrature_pair(const FockTruncation& trunc) {
  const LadderOperators l = ladder(trunc);
  FockOperator a = lift_to_spinor(l.a);
  FockOperator a_dag = lift_to_spinor(l.a_dag);
  FockOperator number = lift_to_spinor(l.number);
  FockOperator q = cplx(1.0 / kSqrt2) * (a + a_dag);
  FockOperator p = cplx(0.0, -1.0 / kSqrt2) * (a - a_dag);
  return {std::move(a), std::move(a_dag), std::move(number), std::move(q), std::move(p)};
}

SpinLadder spin_ladder(double omega_plus, double omega_minus, std::size_t n_max) {
  const LadderOperators lp = ladder(FockTruncation::scaled(n_max, omega_plus));
  const LadderOperators lm = ladder(FockTruncation::scaled(n_max, omega_minus));
  FockOperator a = spin_kron(projector(Spin::plus), lp.a) + spin_kron(projector(Spin::minus), lm.a);
  FockOperator a_dag = a.adjoint();
  FockOperator number =
      spin_kron(projector(Spin::plus), lp.number) + spin_kron(projector(Spin::minus), lm.number);
  FockOperator q = cplx(1.0 / kSqrt2) * (a + a_dag);
  FockOperator p = cplx(0.0, -1.0 / kSqrt2) * (a - a_dag);
  return {omega_plus,       omega_minus,     std::move(a), std::move(a_dag),
          std::move(number), std::move(q), std::move(p)};
}

double f_weight(Spin s, double r_tilde, double omega_plus, double omega_minus) {
  if (!(omega_plus > 0.0) || !(omega_minus > 0.0)) throw DomainError("omega_+- must be > 0");
  const double r2 = r_tilde * r_tilde;
  // F_s = 1 / (1 + exp(r^2/omega_other - r^2/omega_s)).
  const double own = r2 / (s == Spin::plus ? omega_plus : omega_minus);
  const double other = r2 / (s == Spin::plus ? omega_minus : omega_plus);
  return 1.0 / (1.0 + std::exp(other - own));
}

double ExpectationTable::max_abs_diff() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.abs_diff);
  return m;
}

const ExpectationRow& ExpectationTable::at(const std::string& observable) const {
  for (const auto& r : rows) {
    if (r.observable == observable) return r;
  }
  throw IndexError("no expectation row named " + observable);
}

ExpectationTable qvcs_expectations(const Quaternion& q, Spin s, double omega, std::size_t n_max) {
  const SpinorState v = energy_qvcs(q, s, omega, n_max).state;
  const QuadraturePair ops = quadrature_pair(FockTruncation::scaled(n_max, omega));
  const double sgn = spin_sign(s);
  const double r = q.r();
  const double ce = std::cos(q.eta());
  const double se = std::sin(q.eta());
  const double cp = std::cos(q.phi());
  ExpectationTable t;
  t.rows.push_back(row("A", cplx(r / 2.0 * ce, sgn * r / 2.0 * se * cp), expect(ops.a, v)));
  t.rows.push_back(
      row("A_dag", cplx(r / 2.0 * ce, -sgn * r / 2.0 * se * cp), expect(ops.a_dag, v)));
  t.rows.push_back(row("Q", r / kSqrt2 * ce, expect(ops.q_op, v)));
  t.rows.push_back(row("P", sgn * r / kSqrt2 * se * cp, expect(ops.p_op, v)));
  t.rows.push_back(row("N", r * r / 2.0, expect(ops.number, v)));
  return t;
}

ExpectationTable qqvcs_expectations(const QuaternionQ& q, Spin s, double omega_plus,
                                    double omega_minus, std::size_t n_max) {
  const SpinorState v = q_qvcs(q, s, omega_plus, omega_minus, n_max).state;
  const SpinLadder ops = spin_ladder(omega_plus, omega_minus, n_max);
  const double sgn = spin_sign(s);
  const double r = q.r_tilde();
  const double r2 = r * r;
  const double ct = std::cos(q.theta());
  const double st = std::sin(q.theta());
  const double cp = std::cos(q.varphi());
  const double f = f_weight(s, r, omega_plus, omega_minus);
  const double fp = f_weight(Spin::plus, r, omega_plus, omega_minus);
  const double fm = f_weight(Spin::minus, r, omega_plus, omega_minus);
  const double w = s == Spin::plus ? omega_plus : omega_minus;

  const CVector qv = ops.q_op.matrix() * v.coeffs();
  const CVector pv = ops.p_op.matrix() * v.coeffs();
  ExpectationTable t;
  t.rows.push_back(row("calA", r * f * cplx(ct, sgn * st * cp), expect(ops.cal_a, v)));
  t.rows.push_back(row("calA_dag", r * f * cplx(ct, -sgn * st * cp), expect(ops.cal_a_dag, v)));
  t.rows.push_back(row("calQ", r * kSqrt2 * f * ct, expect(ops.q_op, v)));
  t.rows.push_back(row("calP", sgn * r * kSqrt2 * f * st * cp, expect(ops.p_op, v)));
  t.rows.push_back(
      row("calAAdag", (r2 + w) * f, squared_norm(ops.cal_a_dag.matrix() * v.coeffs())));
  t.rows.push_back(row("calN", r2 * f, expect(ops.number, v)));
  t.rows.push_back(row("calQ2", 0.5 * (4.0 * r2 * ct * ct + w) * f, squared_norm(qv)));
  t.rows.push_back(row("calP2", 0.5 * (4.0 * r2 * st * st + w) * f, squared_norm(pv)));
  t.rows.push_back(
      row("dQ2", 2.0 * r2 * fp * fm * ct * ct + w * f / 2.0, dispersion(ops.q_op, v)));
  t.rows.push_back(row("dP2", 2.0 * r2 * f * st * st * (1.0 - f * cp * cp) + w * f / 2.0,
                       dispersion(ops.p_op, v)));
  t.rows.push_back(row("F_sum", 1.0, fp + fm));
  return t;
}

SpinorState generalized_qvcs(const Quaternion& q, Spin s, const FockTruncation& trunc,
                             double tail_tol) {
  const std::size_t n_max = trunc.n_max();
  std::vector<double> log_mag(n_max + 1);
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n == 0) {
      log_mag[n] = 0.0;
    } else if (q.r() == 0.0) {
      log_mag[n] = -std::numeric_limits<double>::infinity();
    } else {
      log_mag[n] = static_cast<double>(n) * std::log(q.r()) - 0.5 * trunc.log_factorial(n);
    }
    hi = std::max(hi, 2.0 * log_mag[n]);
  }
  CompensatedSum total;
  for (double lm : log_mag) total.add(std::exp(2.0 * lm - hi));
  const double log_half_norm = hi + std::log(total.value());
  const double last = std::exp(2.0 * log_mag[n_max] - log_half_norm);
  if (last > tail_tol) {
    std::ostringstream os;
    os << "generalized_qvcs: last retained term carries " << last << " of the norm";
    throw TailError(os.str(), last, 2 * n_max);
  }
  const double log_norm = std::log(2.0) + log_half_norm;
  const Vec2 spin = chi(s);
  CVector c(static_cast<Eigen::Index>(2 * (n_max + 1)));
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double mag = std::exp(log_mag[n] - 0.5 * log_norm);
    c.segment<2>(static_cast<Eigen::Index>(2 * n)) = mag * (unit_power(q, n) * spin);
  }
  return SpinorState(std::move(c));
}

UncertaintyResult uncertainty_product(const Quaternion& q, Spin s, const FockTruncation& trunc) {
  const SpinorState v = generalized_qvcs(q, s, trunc);
  const QuadraturePair ops = quadrature_pair(trunc);
  UncertaintyResult out{};
  out.dq2 = dispersion(ops.q_op, v);
  out.dp2 = dispersion(ops.p_op, v);
  out.lhs = out.dq2 * out.dp2;

  const std::size_t n_max = trunc.n_max();
  CompensatedSum norm;
  CompensatedSum weighted;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double log_term = n == 0 ? 0.0
                            : q.r() == 0.0
                                ? -std::numeric_limits<double>::infinity()
                                : 2.0 * static_cast<double>(n) * std::log(q.r()) -
                                      trunc.log_factorial(n);
    const double term = std::exp(log_term);
    norm.add(2.0 * term);
    weighted.add((trunc.x(n + 1) - trunc.x(n)) * term);
  }
  const double mean_commutator = weighted.value() / norm.value();
  out.bound = 0.25 * mean_commutator * mean_commutator;
  out.holds = out.lhs >= out.bound - 1e-12;
  return out;
}

QDispersion qqvcs_dispersion(const QuaternionQ& q, Spin s, double omega_plus, double omega_minus,
                             std::size_t n_max) {
  const SpinorState v = q_qvcs(q, s, omega_plus, omega_minus, n_max).state;
  const SpinLadder ops = spin_ladder(omega_plus, omega_minus, n_max);
  QDispersion d{};
  d.dq2 = dispersion(ops.q_op, v);
  d.dp2 = dispersion(ops.p_op, v);
  d.lhs = d.dq2 * d.dp2;
  return d;
}

double commutator_residual(const QuadraturePair& ops, const SpinorState& v) {
  const FockOperator qp = ops.q_op * ops.p_op - ops.p_op * ops.q_op;
  const FockOperator aa = ops.a * ops.a_dag - ops.a_dag * ops.a;
  return ((qp - kI * aa).matrix() * v.coeffs()).norm();
}

}  // namespace qvcs
