#include "qvcs/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>

#include <unsupported/Eigen/MatrixFunctions>

#include "qvcs/errors.hpp"
#include "qvcs/quaternion.hpp"

namespace qvcs {
namespace {

void check_capacity(std::size_t degree, const RadialQuadrature& quad) {
  if (quad.kind != RadialKind::gauss_laguerre_u_substitution) return;
  if (quad.rule.size() == 0) throw CapacityError("Gauss rule has no nodes");
  if (degree > quad.rule.exact_degree()) {
    throw CapacityError("moment degree " + std::to_string(degree) + " exceeds the exact degree " +
                        std::to_string(quad.rule.exact_degree()) + " of a " +
                        std::to_string(quad.rule.size()) + "-node rule");
  }
}

// log sum_i w_i u_i^e, shifted by the largest term.
double log_laguerre_moment(const GaussRule& rule, double e) {
  double hi = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    terms[i] = rule.log_weights[i] + e * std::log(rule.nodes[i]);
    hi = std::max(hi, terms[i]);
  }
  CompensatedSum s;
  for (double t : terms) s.add(std::exp(t - hi));
  return hi + std::log(s.value());
}

double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

void check_q_params(const QMomentParams& p) {
  if (!(p.omega_c > 0.0) || !(p.omega_plus > 0.0) || !(p.omega_minus > 0.0)) {
    throw DomainError("omega_c, omega_plus and omega_minus must be > 0");
  }
  if (std::abs(p.omega_plus + p.omega_minus - 2.0 * p.omega_c) > 1e-12 * 2.0 * p.omega_c) {
    throw ConfigError("Q-family moments require omega_plus + omega_minus = 2 omega_c");
  }
}

// S_k = sum over the angular grid of w exp(i k phase sigma(polar, azimuth)), k >= 0.
std::vector<Mat2> angular_sums(std::size_t k_max, const AngularGrid& grid) {
  const GaussRule phase = periodic_trapezoid(grid.n_phase);
  const GaussRule polar = gauss_legendre(grid.n_polar);
  const GaussRule azimuth = periodic_trapezoid(grid.n_azimuth);
  std::vector<Mat2> sums(k_max + 1, Mat2::Zero());
  for (std::size_t b = 0; b < polar.size(); ++b) {
    const double phi = std::acos(std::clamp(polar.nodes[b], -1.0, 1.0));
    for (std::size_t c = 0; c < azimuth.size(); ++c) {
      const Mat2 sigma = sigma_n(phi, azimuth.nodes[c]);
      const double w_bc = polar.weights[b] * azimuth.weights[c];
      for (std::size_t a = 0; a < phase.size(); ++a) {
        const double w = w_bc * phase.weights[a];
        for (std::size_t k = 0; k <= k_max; ++k) {
          const double angle = static_cast<double>(k) * phase.nodes[a];
          sums[k] += w * (Mat2::Identity() * std::cos(angle) + kI * std::sin(angle) * sigma);
        }
      }
    }
  }
  return sums;
}

Mat2 angular_block(const std::vector<Mat2>& sums, std::size_t n, std::size_t m) {
  return n >= m ? sums[n - m] : Mat2(sums[m - n].adjoint());
}

CMatrix assemble_energy(double omega, const RadialQuadrature& quad, const AngularGrid& grid,
                        std::size_t n_max) {
  const std::vector<Mat2> sums = angular_sums(n_max, grid);
  const auto d = static_cast<Eigen::Index>(2 * (n_max + 1));
  CMatrix out = CMatrix::Zero(d, d);
  const double log_pref = -std::log(8.0 * kPi * kPi);
  std::vector<double> log_rad(2 * n_max + 1);
  for (std::size_t p = 0; p <= 2 * n_max; ++p) {
    const double e = 0.5 * static_cast<double>(p);
    log_rad[p] = e * std::log(omega) + log_laguerre_moment(quad.rule, e);
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t m = 0; m <= n_max; ++m) {
      const double log_rho = log_factorial(n) + log_factorial(m) +
                             static_cast<double>(n + m) * std::log(omega);
      const double coeff = std::exp(log_pref + log_rad[n + m] - 0.5 * log_rho);
      out.block<2, 2>(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * m)) =
          coeff * angular_block(sums, n, m);
    }
  }
  return out;
}

CMatrix assemble_q(const IdentityFamily& f, const RadialQuadrature& quad, const AngularGrid& grid,
                   std::size_t n_max) {
  const QMomentParams qp{f.omega_c, f.omega_plus, f.omega_minus};
  check_q_params(qp);
  const std::vector<Mat2> sums = angular_sums(n_max, grid);
  const double a = 2.0 * f.omega_c / (f.omega_plus * f.omega_minus);
  const double w[2] = {f.omega_plus, f.omega_minus};
  const auto d = static_cast<Eigen::Index>(2 * (n_max + 1));
  CMatrix out = CMatrix::Zero(d, d);
  std::vector<double> log_rad(2 * n_max + 1);
  for (std::size_t p = 0; p <= 2 * n_max; ++p) {
    const double e = 0.5 * static_cast<double>(p);
    log_rad[p] = -std::log(2.0) - (e + 1.0) * std::log(a) + log_laguerre_moment(quad.rule, e);
  }
  const double base = -std::log(4.0 * kPi) - std::log(kPi) - std::log(f.omega_plus * f.omega_minus);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    for (std::size_t m = 0; m <= n_max; ++m) {
      const double dm = static_cast<double>(m);
      const Mat2 ang = angular_block(sums, n, m);
      for (int s = 0; s < 2; ++s) {
        // W(r~) row s carries (2 omega_c)^{n+1} / omega_{other(s)}^n.
        const double log_w = base + (dn + 1.0) * std::log(2.0 * f.omega_c) -
                             dn * std::log(w[1 - s]);
        for (int t = 0; t < 2; ++t) {
          const double log_r = log_factorial(n) + dn * std::log(w[s]) + log_factorial(m) +
                               dm * std::log(w[t]);
          const double coeff = std::exp(log_w + log_rad[n + m] - 0.5 * log_r);
          out(static_cast<Eigen::Index>(2 * n) + s, static_cast<Eigen::Index>(2 * m) + t) =
              coeff * ang(s, t);
        }
      }
    }
  }
  return out;
}

CMatrix assemble_diagonal(const IdentityFamily& f, const RadialQuadrature& quad,
                          const AngularGrid& grid, std::size_t n_max) {
  if (!(f.omega_plus > 0.0) || !(f.omega_minus > 0.0)) {
    throw DomainError("omega_plus and omega_minus must be > 0");
  }
  const GaussRule phase = periodic_trapezoid(grid.n_phase);
  std::vector<cplx> trig(n_max + 1, cplx(0.0));
  double phase_total = 0.0;
  for (std::size_t a = 0; a < phase.size(); ++a) {
    phase_total += phase.weights[a];
    for (std::size_t k = 0; k <= n_max; ++k) {
      trig[k] += phase.weights[a] * std::polar(1.0, static_cast<double>(k) * phase.nodes[a]);
    }
  }
  const double w[2] = {f.omega_plus, f.omega_minus};
  const double log_m0 = log_laguerre_moment(quad.rule, 0.0);
  const auto d = static_cast<Eigen::Index>(2 * (n_max + 1));
  CMatrix out = CMatrix::Zero(d, d);
  const double base = -std::log(4.0 * kPi * kPi) + std::log(4.0 / (w[0] * w[1]));
  for (int s = 0; s < 2; ++s) {
    const double ws = w[s];
    const double wo = w[1 - s];
    // Spectator integrals over (r_o, phi_o).
    const double log_spectator = std::log(wo / 2.0) + log_m0 + std::log(phase_total);
    for (std::size_t n = 0; n <= n_max; ++n) {
      for (std::size_t m = 0; m <= n_max; ++m) {
        const double e = 0.5 * static_cast<double>(n + m);
        const double log_rad =
            (e + 1.0) * std::log(ws) - std::log(2.0) + log_laguerre_moment(quad.rule, e);
        const double log_r = log_factorial(n) + log_factorial(m) +
                             static_cast<double>(n + m) * std::log(ws);
        const cplx t = n >= m ? trig[n - m] : std::conj(trig[m - n]);
        out(static_cast<Eigen::Index>(2 * n) + s, static_cast<Eigen::Index>(2 * m) + s) =
            std::exp(base + log_spectator + log_rad - 0.5 * log_r) * t;
      }
    }
  }
  return out;
}

}  // namespace

double moment_ratio(std::size_t n, double omega, const RadialQuadrature& quad) {
  const DensitySpec density(omega);
  check_capacity(n, quad);
  const double dn = static_cast<double>(n);
  if (quad.kind == RadialKind::gauss_laguerre_u_substitution) {
    // r = sqrt(omega u): int r^{2n+1} rho dr = omega^n int u^n e^{-u} du.
    return std::exp(log_laguerre_moment(quad.rule, dn) - log_factorial(n));
  }
  const double log_rho = log_factorial(n) + dn * std::log(omega);
  return integrate_half_line([&](double r) {
    if (r <= 0.0) return 0.0;
    return std::exp((2.0 * dn + 1.0) * std::log(r) + density.log_density(r) - log_rho);
  });
}

double moment_residual(std::size_t n, double omega, const RadialQuadrature& quad) {
  return std::abs(moment_ratio(n, omega, quad) - 1.0);
}

double qqvcs_moment_value(std::size_t n, const QMomentParams& params, Spin sign,
                          const RadialQuadrature& quad) {
  check_q_params(params);
  check_capacity(n, quad);
  const double dn = static_cast<double>(n);
  const double w_sign = sign == Spin::plus ? params.omega_plus : params.omega_minus;
  const double w_other = sign == Spin::plus ? params.omega_minus : params.omega_plus;
  const double prod = params.omega_plus * params.omega_minus;
  const double a = 2.0 * params.omega_c / prod;
  const double log_rho = log_factorial(n) + dn * std::log(w_sign);
  const double log_pref = (dn + 1.0) * std::log(2.0 * params.omega_c) - dn * std::log(w_other) +
                          std::log(2.0) - log_rho - std::log(prod);
  if (quad.kind == RadialKind::gauss_laguerre_u_substitution) {
    // u = a r^2: int r^{2n+1} e^{-a r^2} dr = a^{-(n+1)} / 2 int u^n e^{-u} du.
    const double log_int =
        -std::log(2.0) - (dn + 1.0) * std::log(a) + log_laguerre_moment(quad.rule, dn);
    return std::exp(log_pref + log_int);
  }
  // The integral is rescaled by a^{n+1} / n! to keep the integrand O(1).
  const double shift = (dn + 1.0) * std::log(a) - log_factorial(n);
  const double scaled = integrate_half_line([&](double r) {
    if (r <= 0.0) return 0.0;
    return std::exp((2.0 * dn + 1.0) * std::log(r) - a * r * r + shift);
  });
  return std::exp(log_pref - shift) * scaled;
}

double qqvcs_moment_residual(std::size_t n, const QMomentParams& params, Spin sign,
                             const RadialQuadrature& quad) {
  return std::abs(qqvcs_moment_value(n, params, sign, quad) - 1.0);
}

AngularGrid AngularGrid::for_truncation(std::size_t n_max) { return {4 * n_max + 8, 8, 8}; }

Mat2 angular_orthogonality(std::size_t n, std::size_t m, const AngularGrid& grid) {
  const long k = static_cast<long>(n) - static_cast<long>(m);
  if (grid.n_phase <= static_cast<std::size_t>(std::labs(k))) {
    throw ResolutionError("phase grid of " + std::to_string(grid.n_phase) +
                          " nodes cannot resolve |n - m| = " + std::to_string(std::labs(k)));
  }
  const GaussRule theta = periodic_trapezoid(grid.n_phase);
  const GaussRule polar = gauss_legendre(grid.n_polar);
  const GaussRule varrho = periodic_trapezoid(grid.n_azimuth);
  Mat2 total = Mat2::Zero();
  for (std::size_t b = 0; b < polar.size(); ++b) {
    const double phi = std::acos(std::clamp(polar.nodes[b], -1.0, 1.0));
    for (std::size_t c = 0; c < varrho.size(); ++c) {
      const Mat2 sigma = sigma_n(phi, varrho.nodes[c]);
      for (std::size_t a = 0; a < theta.size(); ++a) {
        const Mat2 gen = (kI * (static_cast<double>(k) * theta.nodes[a])) * sigma;
        const Mat2 e = gen.exp();
        total += (polar.weights[b] * varrho.weights[c] * theta.weights[a]) * e;
      }
    }
  }
  return total;
}

IdentityReport assemble_identity(const IdentityFamily& family, const RadialQuadrature& quad,
                                 const AngularGrid& grid, std::size_t n_max,
                                 std::size_t n_interior) {
  if (quad.kind != RadialKind::gauss_laguerre_u_substitution) {
    throw ConfigError("assemble_identity needs a Gauss-Laguerre radial rule");
  }
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  if (n_interior > n_max) throw ConfigError("interior block exceeds n_max");
  if (grid.n_phase < 1 || grid.n_polar < 1 || grid.n_azimuth < 1) {
    throw ConfigError("angular grid needs at least one node per axis");
  }
  check_capacity(n_max, quad);
  CMatrix m;
  switch (family.kind) {
    case CSKind::canonical:
      m = assemble_energy(1.0, quad, grid, n_max);
      break;
    case CSKind::energy_qvcs:
      if (!(family.omega > 0.0)) throw DomainError("omega must be > 0");
      m = assemble_energy(family.omega, quad, grid, n_max);
      break;
    case CSKind::q_qvcs:
      m = assemble_q(family, quad, grid, n_max);
      break;
    case CSKind::vcs_diagonal:
      m = assemble_diagonal(family, quad, grid, n_max);
      break;
  }
  const auto di = static_cast<Eigen::Index>(2 * (n_interior + 1));
  const CMatrix interior = m.topLeftCorner(di, di);
  const double err = max_abs(interior - CMatrix::Identity(di, di));
  double off = 0.0;
  for (Eigen::Index n = 0; n <= static_cast<Eigen::Index>(n_interior); ++n) {
    for (Eigen::Index k = 0; k <= static_cast<Eigen::Index>(n_interior); ++k) {
      if (n != k) off = std::max(off, max_abs(interior.block<2, 2>(2 * n, 2 * k)));
    }
  }
  return {FockOperator(std::move(m)), n_interior, err, off, quad.rule.size(), grid};
}

std::vector<RefinementStep> identity_refinement(const IdentityFamily& family,
                                                const RadialQuadrature& quad, std::size_t n_max,
                                                std::size_t n_interior) {
  const AngularGrid fine = AngularGrid::for_truncation(n_max);
  std::vector<RefinementStep> out;
  for (std::size_t n_phase : {std::size_t{6}, std::size_t{12}, fine.n_phase}) {
    AngularGrid g = fine;
    g.n_phase = n_phase;
    out.push_back({n_phase, assemble_identity(family, quad, g, n_max, n_interior).interior_error});
  }
  return out;
}

bool strictly_decreasing(const std::vector<RefinementStep>& steps) {
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (!(steps[i].interior_error < steps[i - 1].interior_error)) return false;
  }
  return true;
}

}  // namespace qvcs
