#pragma once

// Quaternions in their 2x2 complex-matrix realization
//
//   q = x0 I + i (x1 s1 - x2 s2 + x3 s3) = r exp(i eta sigma(n)),
//
// stored in polar form (r, eta, phi, psi) and materialized on demand.

#include <cstddef>

#include "qvcs/linalg.hpp"

namespace qvcs {

/// sigma(n) = [[cos phi, e^{i psi} sin phi], [e^{-i psi} sin phi, -cos phi]].
/// Hermitian and involutive. phi in [0, pi], psi in [0, 2 pi].
Mat2 sigma_n(double phi, double psi);

/// Quaternion matrix from Cartesian components (x0, x1, x2, x3).
Mat2 cartesian_matrix(double x0, double x1, double x2, double x3);

class Quaternion {
 public:
  /// Throws DomainError for r < 0, non-finite input, or angles outside
  /// eta in [0, 2pi], phi in [0, pi], psi in [0, 2pi]. An angle equal to 2pi
  /// is stored as 0.
  Quaternion(double r, double eta, double phi, double psi);

  double r() const noexcept { return r_; }
  double eta() const noexcept { return eta_; }
  double phi() const noexcept { return phi_; }
  double psi() const noexcept { return psi_; }

  Mat2 sigma() const { return sigma_n(phi_, psi_); }

  /// x0 = r cos eta, x1 = r sin eta sin phi cos psi, x2 = r sin eta sin phi sin psi,
  /// x3 = r sin eta cos phi.
  Eigen::Vector4d cartesian() const;

 private:
  double r_;
  double eta_;
  double phi_;
  double psi_;
};

/// r (I cos eta + i sigma(n) sin eta).
Mat2 to_matrix(const Quaternion& q);

/// exp(i n eta sigma(n)) = I cos(n eta) + i sigma(n) sin(n eta); the unit-modulus
/// part of q^n.
Mat2 unit_power(const Quaternion& q, std::size_t n);

/// q^n = r^n (I cos n eta + i sigma(n) sin n eta), exact in polar form.
Mat2 power(const Quaternion& q, std::size_t n);

/// Conjugate transpose r (I cos eta - i sigma(n) sin eta).
Mat2 dagger(const Quaternion& q);

/// The quaternion Q = B(r~) exp(i theta sigma~(k)) used by the Q-family of
/// vector coherent states. Same algebra as Quaternion, its own angle names.
class QuaternionQ {
 public:
  QuaternionQ(double r_tilde, double theta, double varphi, double varrho);

  double r_tilde() const noexcept { return q_.r(); }
  double theta() const noexcept { return q_.eta(); }
  double varphi() const noexcept { return q_.phi(); }
  double varrho() const noexcept { return q_.psi(); }

  Mat2 sigma() const { return q_.sigma(); }

  /// View as a generic polar quaternion (r~, theta, varphi, varrho).
  const Quaternion& as_quaternion() const noexcept { return q_; }

 private:
  Quaternion q_;
};

Mat2 to_matrix(const QuaternionQ& q);
Mat2 unit_power(const QuaternionQ& q, std::size_t n);
Mat2 power(const QuaternionQ& q, std::size_t n);
Mat2 dagger(const QuaternionQ& q);

/// u_phi1 u_varphi u_phi2 with u_a = diag(e^{i a/2}, e^{-i a/2}) and
/// u_varphi = [[cos(varphi/2), i sin(varphi/2)], [i sin(varphi/2), cos(varphi/2)]].
Mat2 su2_factor(double phi1, double varphi, double phi2);

/// U diag(z, conj z) U^dagger with z = r~ e^{i theta} and U = su2_factor(...).
/// Equals to_matrix(QuaternionQ(r~, theta, varphi, phi1 - pi/2)).
Mat2 diagonal_conjugate(double r_tilde, double theta, double phi1, double varphi, double phi2);

}  // namespace qvcs
