#pragma once

// One-dimensional quadrature rules used by the moment and resolution checks.

#include <cstddef>
#include <functional>
#include <vector>

namespace qvcs {

/// Gauss rule with nodes, weights and log(weights); the log form keeps the
/// tiny outer Laguerre weights usable against large polynomial moments.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;

  std::size_t size() const noexcept { return nodes.size(); }
  /// Largest polynomial degree integrated exactly, 2 size - 1.
  std::size_t exact_degree() const noexcept { return 2 * nodes.size() - 1; }
};

/// Gauss-Laguerre rule for int_0^inf f(u) e^{-u} du, by Newton iteration on the
/// scaled three-term recurrence.
GaussRule gauss_laguerre(std::size_t n);

/// Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(std::size_t n);

/// Equispaced rule on [0, 2pi): nodes 2 pi j / n, weights 2 pi / n.
GaussRule periodic_trapezoid(std::size_t n);

/// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

enum class RadialKind { gauss_laguerre_u_substitution, adaptive_reference };

const char* to_string(RadialKind kind);

/// Radial rule for int_0^inf g(r) r dr against a Gaussian density. For the
/// Gauss kind the rule lives in u = r^2 / omega (Laguerre weight e^{-u}); the
/// adaptive kind integrates in r with boost's exp_sinh and has no fixed nodes.
struct RadialQuadrature {
  RadialKind kind = RadialKind::gauss_laguerre_u_substitution;
  GaussRule rule;

  static RadialQuadrature gauss(std::size_t nodes = 200);
  static RadialQuadrature adaptive();

  std::size_t node_count() const noexcept { return rule.size(); }
};

/// int_0^inf f(r) dr by tanh-sinh on the half line (exp_sinh), relative
/// tolerance ~1e-14.
double integrate_half_line(const std::function<double(double)>& f);

/// rho(r) = (2 / omega) exp(-r^2 / omega), normalized so int r rho dr = 1.
class DensitySpec {
 public:
  explicit DensitySpec(double omega);

  double omega() const noexcept { return omega_; }
  double density(double r) const;
  double log_density(double r) const;
  /// W(r) = N(r) rho(r) / 2 pi with N(r) = 2 exp(r^2 / omega); equals 2 / (pi omega).
  double weight_function(double r) const;

 private:
  double omega_;
};

}  // namespace qvcs
