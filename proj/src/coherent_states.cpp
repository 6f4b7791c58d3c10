#include "qvcs/coherent_states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include <boost/math/special_functions/gamma.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "qvcs/errors.hpp"

namespace qvcs {
namespace {

void check_weight(double omega, const char* name) {
  if (!std::isfinite(omega) || omega <= 0.0) {
    throw DomainError(std::string(name) + " must be finite and > 0");
  }
}

// log(r^n / sqrt(n! omega^n)); the n = 0 term is 0 even for r = 0.
double log_series_magnitude(double r, double omega, std::size_t n) {
  if (n == 0) return 0.0;
  if (r == 0.0) return -std::numeric_limits<double>::infinity();
  const double x = static_cast<double>(n);
  return x * std::log(r) - 0.5 * (std::lgamma(x + 1.0) + x * std::log(omega));
}

double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

void check_tail(double tail, double tol, double mean, const char* family) {
  if (tail > tol) {
    const std::size_t suggested = suggest_n_max(mean, tol);
    std::ostringstream os;
    os << family << ": truncation tail " << tail << " exceeds " << tol << "; use n_max >= "
       << suggested;
    throw TailError(os.str(), tail, suggested);
  }
}

FamilyState scalar_weight_state(const Quaternion& q, Spin s, double omega, std::size_t n_max,
                                double tail_tol, const char* family) {
  check_weight(omega, "omega");
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  const double mean = q.r() * q.r() / omega;
  const double tail = poisson_tail(n_max, mean);
  check_tail(tail, tail_tol, mean, family);
  const double log_norm = std::log(2.0) + mean;
  const Vec2 spin = chi(s);
  CVector c(static_cast<Eigen::Index>(2 * (n_max + 1)));
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double mag = std::exp(log_series_magnitude(q.r(), omega, n) - 0.5 * log_norm);
    c.segment<2>(static_cast<Eigen::Index>(2 * n)) = mag * (unit_power(q, n) * spin);
  }
  return {SpinorState(std::move(c)), tail};
}

}  // namespace

const char* to_string(CSKind kind) {
  switch (kind) {
    case CSKind::canonical:
      return "canonical";
    case CSKind::energy_qvcs:
      return "energy_qvcs";
    case CSKind::vcs_diagonal:
      return "vcs_diagonal";
    case CSKind::q_qvcs:
      return "q_qvcs";
  }
  return "unknown";
}

double poisson_tail(std::size_t n_max, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("Poisson mean must be >= 0");
  if (mean == 0.0) return 0.0;
  return boost::math::gamma_p(static_cast<double>(n_max) + 1.0, mean);
}

std::size_t suggest_n_max(double mean, double tol) {
  if (!(tol > 0.0)) throw DomainError("tail tolerance must be > 0");
  std::size_t n = 1;
  while (poisson_tail(n, mean) > tol) {
    n = n < 64 ? n + 1 : n + n / 8;
    if (n > 10'000'000) throw NumericalError("no admissible n_max below 1e7");
  }
  return n;
}

double energy_normalization(double r, double omega) {
  check_weight(omega, "omega");
  return 2.0 * std::exp(r * r / omega);
}

double vcs_normalization(double r1, double r2, double omega_plus, double omega_minus) {
  check_weight(omega_plus, "omega_plus");
  check_weight(omega_minus, "omega_minus");
  return std::exp(r1 * r1 / omega_plus) + std::exp(r2 * r2 / omega_minus);
}

FamilyState canonical_qvcs(const Quaternion& q, Spin s, std::size_t n_max, double tail_tol) {
  return scalar_weight_state(q, s, 1.0, n_max, tail_tol, "canonical_qvcs");
}

FamilyState energy_qvcs(const Quaternion& q, Spin s, double omega, std::size_t n_max,
                        double tail_tol) {
  return scalar_weight_state(q, s, omega, n_max, tail_tol, "energy_qvcs");
}

FamilyState vcs_diagonal(cplx z1, cplx z2, Spin s, double omega_plus, double omega_minus,
                         std::size_t n_max, double tail_tol) {
  check_weight(omega_plus, "omega_plus");
  check_weight(omega_minus, "omega_minus");
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  const double r1 = std::abs(z1);
  const double r2 = std::abs(z2);
  const double log_norm = log_sum_exp(r1 * r1 / omega_plus, r2 * r2 / omega_minus);
  const cplx z = s == Spin::plus ? z1 : z2;
  const double r = std::abs(z);
  const double omega = s == Spin::plus ? omega_plus : omega_minus;
  const double mean = r * r / omega;
  const double tail = poisson_tail(n_max, mean);
  check_tail(tail, tail_tol, mean, "vcs_diagonal");
  const double arg = std::arg(z);
  CVector c = CVector::Zero(static_cast<Eigen::Index>(2 * (n_max + 1)));
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double mag = std::exp(log_series_magnitude(r, omega, n) - 0.5 * log_norm);
    c(static_cast<Eigen::Index>(basis_index(s, n))) =
        std::polar(mag, static_cast<double>(n) * arg);
  }
  return {SpinorState(std::move(c)), tail};
}

FamilyState q_qvcs(const QuaternionQ& q, Spin s, double omega_plus, double omega_minus,
                   std::size_t n_max, double tail_tol) {
  check_weight(omega_plus, "omega_plus");
  check_weight(omega_minus, "omega_minus");
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  const double r = q.r_tilde();
  const double mean_p = r * r / omega_plus;
  const double mean_m = r * r / omega_minus;
  const double tail = std::max(poisson_tail(n_max, mean_p), poisson_tail(n_max, mean_m));
  check_tail(tail, tail_tol, std::max(mean_p, mean_m), "q_qvcs");
  const double log_norm = log_sum_exp(mean_p, mean_m);
  const Vec2 spin = chi(s);
  CVector c(static_cast<Eigen::Index>(2 * (n_max + 1)));
  for (std::size_t n = 0; n <= n_max; ++n) {
    const Vec2 u = unit_power(q, n) * spin;
    const double mp = std::exp(log_series_magnitude(r, omega_plus, n) - 0.5 * log_norm);
    const double mm = std::exp(log_series_magnitude(r, omega_minus, n) - 0.5 * log_norm);
    c(static_cast<Eigen::Index>(2 * n)) = mp * u(0);
    c(static_cast<Eigen::Index>(2 * n + 1)) = mm * u(1);
  }
  return {SpinorState(std::move(c)), tail};
}

FockOperator displacement_generator(const Quaternion& q, double omega, std::size_t n_max) {
  check_weight(omega, "omega");
  const LadderOperators ops = ladder(FockTruncation::scaled(n_max, omega));
  const Mat2 m = to_matrix(q);
  const FockOperator g = spin_kron(m, ops.a_dag) - spin_kron(dagger(q), ops.a);
  return cplx(1.0 / omega) * g;
}

DisplacementResult displacement_qvcs(const Quaternion& q, Spin s, double omega,
                                     std::size_t n_max) {
  const FockOperator g = displacement_generator(q, omega, n_max);
  const CMatrix u = g.matrix().exp();
  const SpinorState v = cplx(1.0 / std::sqrt(2.0)) * SpinorState::basis(n_max, s, 0);
  SpinorState out(u * v.coeffs());
  const double drift = std::abs(out.norm2() - v.norm2());
  if (!std::isfinite(drift) || drift > 1e-10) {
    std::ostringstream os;
    os << "displacement exponential lost unitarity: norm drift " << drift;
    throw NumericalError(os.str());
  }
  return {std::move(out), drift};
}

SpinorState linear_combination(cplx c_plus, cplx c_minus, const SpinorState& plus,
                               const SpinorState& minus) {
  const double total = std::norm(c_plus) + std::norm(c_minus);
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("linear combination coefficients must satisfy |c+|^2 + |c-|^2 = 1");
  }
  return c_plus * plus + c_minus * minus;
}

EnergyTable::EnergyTable(std::vector<double> plus, std::vector<double> minus)
    : plus_(std::move(plus)), minus_(std::move(minus)) {
  if (plus_.empty() || plus_.size() != minus_.size()) {
    throw ShapeError("energy table needs equal, non-empty spin columns");
  }
}

EnergyTable EnergyTable::zeeman(const ModelParams& params, std::size_t n_max) {
  params.validate();
  std::vector<double> p(n_max + 1);
  std::vector<double> m(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double base = params.omega_c * (static_cast<double>(n) + 0.5);
    p[n] = base - params.omega_c * params.xi_eff();
    m[n] = base + params.omega_c * params.xi_eff();
  }
  return EnergyTable(std::move(p), std::move(m));
}

EnergyTable EnergyTable::weak_coupling(const WeakCouplingModel& model, std::size_t n_max) {
  std::vector<double> p(n_max + 1);
  std::vector<double> m(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    p[n] = model.energy(Spin::plus, n);
    m[n] = model.energy(Spin::minus, n);
  }
  return EnergyTable(std::move(p), std::move(m));
}

EnergyTable EnergyTable::scalar(double omega, std::size_t n_max) {
  std::vector<double> p(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) p[n] = omega * static_cast<double>(n);
  return EnergyTable(p, p);
}

double EnergyTable::energy(Spin s, std::size_t n) const {
  if (n > n_max()) throw IndexError("energy table does not cover n = " + std::to_string(n));
  return s == Spin::plus ? plus_[n] : minus_[n];
}

FockOperator EnergyTable::as_operator() const {
  CVector d(static_cast<Eigen::Index>(2 * plus_.size()));
  for (std::size_t n = 0; n < plus_.size(); ++n) {
    d(static_cast<Eigen::Index>(2 * n)) = plus_[n];
    d(static_cast<Eigen::Index>(2 * n + 1)) = minus_[n];
  }
  return FockOperator(d.asDiagonal().toDenseMatrix());
}

SpinorState evolve(const SpinorState& state, double tau, const EnergyTable& energies) {
  if (state.n_max() > energies.n_max()) {
    throw IndexError("energy table does not cover the state's truncation");
  }
  CVector c = state.coeffs();
  for (std::size_t n = 0; n <= state.n_max(); ++n) {
    for (Spin s : {Spin::plus, Spin::minus}) {
      c(static_cast<Eigen::Index>(basis_index(s, n))) *= std::polar(1.0, -tau * energies.energy(s, n));
    }
  }
  return SpinorState(std::move(c));
}

FockOperator evolution_operator(double t, const EnergyTable& energies) {
  const CMatrix h = energies.as_operator().matrix();
  return FockOperator((cplx(0.0, -t) * h).exp());
}

}  // namespace qvcs
