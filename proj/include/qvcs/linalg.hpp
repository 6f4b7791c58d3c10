#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qvcs {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

namespace pauli {

inline Mat2 identity() { return Mat2::Identity(); }

inline Mat2 x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Mat2 y() {
  Mat2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

inline Mat2 z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// sigma_+ = (sigma_x + i sigma_y)/2 raises chi^- to chi^+.
inline Mat2 plus() {
  Mat2 m;
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

/// sigma_- = (sigma_x - i sigma_y)/2 lowers chi^+ to chi^-.
inline Mat2 minus() {
  Mat2 m;
  m << 0.0, 0.0, 1.0, 0.0;
  return m;
}

}  // namespace pauli

/// Largest absolute entry; the "max norm" used by every residual report.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

}  // namespace qvcs
