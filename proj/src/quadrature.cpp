#include "qvcs/quadrature.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "qvcs/errors.hpp"
#include "qvcs/linalg.hpp"

namespace qvcs {
namespace {

// L_n(x) and L_{n-1}(x) divided by exp(log_scale). Extended precision keeps
// the recurrence accurate to ~1e-15 relative at n = 200.
struct LaguerreEval {
  long double p_n;
  long double p_nm1;
  long double log_scale;
};

LaguerreEval laguerre(std::size_t n, long double x) {
  if (n == 0) return {1.0L, 0.0L, 0.0L};
  long double p0 = 1.0L;
  long double p1 = 1.0L - x;
  long double log_scale = 0.0L;
  for (std::size_t k = 1; k < n; ++k) {
    const auto kk = static_cast<long double>(k);
    const long double p2 = ((2.0L * kk + 1.0L - x) * p1 - kk * p0) / (kk + 1.0L);
    p0 = p1;
    p1 = p2;
    const long double mag = std::fabs(p1);
    if (mag > 1e150L) {
      p0 /= mag;
      p1 /= mag;
      log_scale += std::log(mag);
    }
  }
  return {p1, p0, log_scale};
}

}  // namespace

GaussRule gauss_laguerre(std::size_t n) {
  if (n < 1) throw ConfigError("Gauss-Laguerre rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  const auto dn = static_cast<long double>(n);
  long double z = 0.0L;
  std::vector<long double> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * dn);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * dn);
    } else {
      const auto ai = static_cast<long double>(i - 1);
      z += (1.0L + 2.55L * ai) / (1.9L * ai) * (z - roots[i - 2]);
    }
    LaguerreEval ev{};
    long double step = 0.0L;
    for (int it = 0; it < 100; ++it) {
      ev = laguerre(n, z);
      // L_n'(z) = n (L_n - L_{n-1}) / z; the scale cancels in the ratio.
      const long double dp = dn * (ev.p_n - ev.p_nm1) / z;
      step = ev.p_n / dp;
      z -= step;
      if (std::fabs(step) <= 4.0L * std::numeric_limits<long double>::epsilon() * z) break;
    }
    if (!(std::fabs(step) <= 1e-13L * z)) {
      throw NumericalError("Gauss-Laguerre Newton iteration did not converge");
    }
    roots[i] = z;
    ev = laguerre(n, z);
    // w = -1 / (n L_n'(z) L_{n-1}(z)), evaluated in logs.
    const long double log_dp =
        std::log(dn) + std::log(std::fabs(ev.p_n - ev.p_nm1)) - std::log(z) + ev.log_scale;
    const long double log_p = std::log(std::fabs(ev.p_nm1)) + ev.log_scale;
    rule.nodes[i] = static_cast<double>(z);
    rule.log_weights[i] = static_cast<double>(-std::log(dn) - log_dp - log_p);
    rule.weights[i] = std::exp(rule.log_weights[i]);
  }
  return rule;
}

GaussRule gauss_legendre(std::size_t n) {
  if (n < 1) throw ConfigError("Gauss-Legendre rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  const double dn = static_cast<double>(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk + 1.0) * z * p1 - kk * p0) / (kk + 1.0);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = dn * (z * p1 - p0) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon()) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  for (std::size_t i = 0; i < n; ++i) rule.log_weights[i] = std::log(rule.weights[i]);
  return rule;
}

GaussRule periodic_trapezoid(std::size_t n) {
  if (n < 1) throw ConfigError("trapezoid rule needs at least one node");
  GaussRule rule;
  const double h = 2.0 * kPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    rule.nodes.push_back(h * static_cast<double>(j));
    rule.weights.push_back(h);
    rule.log_weights.push_back(std::log(h));
  }
  return rule;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

const char* to_string(RadialKind kind) {
  return kind == RadialKind::gauss_laguerre_u_substitution ? "gauss_laguerre_u_substitution"
                                                           : "adaptive_reference";
}

RadialQuadrature RadialQuadrature::gauss(std::size_t nodes) {
  return {RadialKind::gauss_laguerre_u_substitution, gauss_laguerre(nodes)};
}

RadialQuadrature RadialQuadrature::adaptive() { return {RadialKind::adaptive_reference, {}}; }

double integrate_half_line(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  const double value = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                                            1e-14, &err);
  if (!std::isfinite(value)) throw NumericalError("half-line integral did not converge");
  return value;
}

DensitySpec::DensitySpec(double omega) : omega_(omega) {
  if (!std::isfinite(omega) || omega <= 0.0) throw DomainError("density omega must be > 0");
}

double DensitySpec::log_density(double r) const {
  return std::log(2.0 / omega_) - r * r / omega_;
}

double DensitySpec::density(double r) const { return std::exp(log_density(r)); }

double DensitySpec::weight_function(double r) const {
  const double n = 2.0 * std::exp(r * r / omega_);
  return n * density(r) / (2.0 * kPi);
}

}  // namespace qvcs
