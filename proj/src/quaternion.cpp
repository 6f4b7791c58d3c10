#include "qvcs/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qvcs/errors.hpp"

namespace qvcs {
namespace {

constexpr double kAngleSlack = 1e-12;

double checked_angle(double value, double upper, const char* name) {
  if (!std::isfinite(value) || value < -kAngleSlack || value > upper + kAngleSlack) {
    std::ostringstream os;
    os << "angle " << name << " = " << value << " outside [0, " << upper << "]";
    throw DomainError(os.str());
  }
  return std::clamp(value, 0.0, upper);
}

// Periodic angles: [0, 2pi] accepted, 2pi stored as 0.
double periodic_angle(double value, const char* name) {
  double a = checked_angle(value, 2.0 * kPi, name);
  return a >= 2.0 * kPi - kAngleSlack ? 0.0 : a;
}

}  // namespace

Mat2 sigma_n(double phi, double psi) {
  phi = checked_angle(phi, kPi, "phi");
  psi = checked_angle(psi, 2.0 * kPi, "psi");
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const cplx e = std::polar(1.0, psi);
  Mat2 m;
  m << c, e * s, std::conj(e) * s, -c;
  return m;
}

Mat2 cartesian_matrix(double x0, double x1, double x2, double x3) {
  Mat2 m;
  m << cplx(x0, x3), cplx(-x2, x1), cplx(x2, x1), cplx(x0, -x3);
  return m;
}

Quaternion::Quaternion(double r, double eta, double phi, double psi)
    : r_(r),
      eta_(periodic_angle(eta, "eta")),
      phi_(checked_angle(phi, kPi, "phi")),
      psi_(periodic_angle(psi, "psi")) {
  if (!std::isfinite(r) || r < 0.0) {
    throw DomainError("quaternion modulus must be finite and >= 0, got " + std::to_string(r));
  }
}

Eigen::Vector4d Quaternion::cartesian() const {
  const double se = std::sin(eta_);
  return {r_ * std::cos(eta_), r_ * se * std::sin(phi_) * std::cos(psi_),
          r_ * se * std::sin(phi_) * std::sin(psi_), r_ * se * std::cos(phi_)};
}

Mat2 unit_power(const Quaternion& q, std::size_t n) {
  const double angle = static_cast<double>(n) * q.eta();
  return Mat2::Identity() * std::cos(angle) + kI * std::sin(angle) * q.sigma();
}

Mat2 to_matrix(const Quaternion& q) { return q.r() * unit_power(q, 1); }

Mat2 power(const Quaternion& q, std::size_t n) {
  return std::pow(q.r(), static_cast<double>(n)) * unit_power(q, n);
}

Mat2 dagger(const Quaternion& q) {
  return q.r() * (Mat2::Identity() * std::cos(q.eta()) - kI * std::sin(q.eta()) * q.sigma());
}

QuaternionQ::QuaternionQ(double r_tilde, double theta, double varphi, double varrho)
    : q_(r_tilde, theta, varphi, varrho) {}

Mat2 to_matrix(const QuaternionQ& q) { return to_matrix(q.as_quaternion()); }
Mat2 unit_power(const QuaternionQ& q, std::size_t n) { return unit_power(q.as_quaternion(), n); }
Mat2 power(const QuaternionQ& q, std::size_t n) { return power(q.as_quaternion(), n); }
Mat2 dagger(const QuaternionQ& q) { return dagger(q.as_quaternion()); }

Mat2 su2_factor(double phi1, double varphi, double phi2) {
  auto phase = [](double a) {
    Mat2 u = Mat2::Zero();
    u(0, 0) = std::polar(1.0, a / 2.0);
    u(1, 1) = std::polar(1.0, -a / 2.0);
    return u;
  };
  const double c = std::cos(varphi / 2.0);
  const double s = std::sin(varphi / 2.0);
  Mat2 rot;
  rot << c, kI * s, kI * s, c;
  return phase(phi1) * rot * phase(phi2);
}

Mat2 diagonal_conjugate(double r_tilde, double theta, double phi1, double varphi, double phi2) {
  const Mat2 u = su2_factor(phi1, varphi, phi2);
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::polar(r_tilde, theta);
  d(1, 1) = std::polar(r_tilde, -theta);
  return u * d * u.adjoint();
}

}  // namespace qvcs
