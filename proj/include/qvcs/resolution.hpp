#pragma once

// Moment problems, angular orthogonality and assembled resolutions of the
// identity for the coherent-state families.

#include <cstddef>
#include <string>
#include <vector>

#include "qvcs/coherent_states.hpp"
#include "qvcs/fock.hpp"
#include "qvcs/linalg.hpp"
#include "qvcs/quadrature.hpp"

namespace qvcs {

/// int_0^inf r^{2n+1} rho(r) dr / (n! omega^n) with rho = (2/omega) e^{-r^2/omega}.
/// Exactly 1. Throws CapacityError when n exceeds the Gauss rule's exact degree.
double moment_ratio(std::size_t n, double omega, const RadialQuadrature& quad);

/// |moment_ratio - 1|.
double moment_residual(std::size_t n, double omega, const RadialQuadrature& quad);

struct QMomentParams {
  double omega_c;
  double omega_plus;
  double omega_minus;
};

/// Q-family per-n moment identity
///   (2 omega_c)^{n+1} / omega_-+^n int 2 r^{2n} / rho_+-(n) e^{-a r^2} / (omega_+ omega_-) r dr = 1
/// with a = 2 omega_c / (omega_+ omega_-). Returns the left-hand side.
/// Throws ConfigError unless omega_+ + omega_- = 2 omega_c (relative 1e-12).
double qqvcs_moment_value(std::size_t n, const QMomentParams& params, Spin sign,
                          const RadialQuadrature& quad);

/// |qqvcs_moment_value - 1|.
double qqvcs_moment_residual(std::size_t n, const QMomentParams& params, Spin sign,
                             const RadialQuadrature& quad);

/// Node counts of the tensor-product angular grid: an equispaced phase
/// (eta or theta), Gauss-Legendre in cos(phi), equispaced azimuth (psi or varrho).
struct AngularGrid {
  std::size_t n_phase;
  std::size_t n_polar;
  std::size_t n_azimuth;

  /// 4 n_max + 8 phase nodes, 8 polar and 8 azimuthal nodes.
  static AngularGrid for_truncation(std::size_t n_max);
};

/// int_0^{2pi} int_0^{2pi} int_0^pi exp(i (n - m) theta sigma~(phi, varrho)) sin phi
/// dphi dvarrho dtheta, with the 2x2 exponential computed by a generic matrix
/// exponential. Throws ResolutionError if n_phase <= |n - m|.
Mat2 angular_orthogonality(std::size_t n, std::size_t m, const AngularGrid& grid);

/// Coherent-state family and weights entering an identity assembly.
struct IdentityFamily {
  CSKind kind = CSKind::energy_qvcs;
  /// canonical (forced to 1) and energy_qvcs.
  double omega = 1.0;
  /// q_qvcs and vcs_diagonal.
  double omega_c = 1.0;
  double omega_plus = 1.0;
  double omega_minus = 1.0;
};

struct IdentityReport {
  FockOperator assembled;
  std::size_t n_interior;
  /// max |assembled - I| over number indices <= n_interior.
  double interior_error;
  /// max |entry| of blocks (n, m), n != m, within the interior.
  double offdiag_max;
  std::size_t radial_nodes;
  AngularGrid grid;
};

/// sum_+- int |state> W <state| dmu by tensor-product quadrature, evaluated in
/// factorized form (radial sum times angular sum per block). The q_qvcs matrix
/// weight W(r~) depends on the row index n and is applied on the left of each
/// block row. Throws CapacityError if the radial rule cannot integrate degree
/// n_max exactly in u.
IdentityReport assemble_identity(const IdentityFamily& family, const RadialQuadrature& quad,
                                 const AngularGrid& grid, std::size_t n_max,
                                 std::size_t n_interior);

struct RefinementStep {
  std::size_t n_phase;
  double interior_error;
};

/// Interior error of assemble_identity on the phase ladder {6, 12, 4 n_max + 8}.
std::vector<RefinementStep> identity_refinement(const IdentityFamily& family,
                                                const RadialQuadrature& quad, std::size_t n_max,
                                                std::size_t n_interior);

/// True when each step's error is strictly below the previous one.
bool strictly_decreasing(const std::vector<RefinementStep>& steps);

}  // namespace qvcs
