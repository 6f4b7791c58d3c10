#pragma once

// Truncated number-state space H_N = span{Phi_0 .. Phi_N} and the spinor
// space C^2 (x) H_N.
//
// Basis ordering is interleaved with spin fastest:
//   index(chi^s (x) Phi_n) = 2 n + s,  s = 0 for chi^+, 1 for chi^-.
// Every module shares this layout, so I_2 (x) op is a Kronecker product with
// 2x2 blocks and block (n, m) of any spinor operator is a quaternion-sized
// matrix acting on the spin label.

#include <cstddef>
#include <vector>

#include "qvcs/linalg.hpp"

namespace qvcs {

enum class Spin { plus = 0, minus = 1 };

inline constexpr std::size_t spin_index(Spin s) { return static_cast<std::size_t>(s); }
inline constexpr std::size_t basis_index(Spin s, std::size_t n) { return 2 * n + spin_index(s); }
inline constexpr Spin other(Spin s) { return s == Spin::plus ? Spin::minus : Spin::plus; }
inline constexpr double spin_sign(Spin s) { return s == Spin::plus ? 1.0 : -1.0; }

/// Unit spinor chi^+ = (1, 0) or chi^- = (0, 1).
Vec2 chi(Spin s);

/// Number space truncated at n_max, carrying the weight sequence x_n of the
/// generalized ladder a|Phi_n> = sqrt(x_n) |Phi_{n-1}>. Weights are stored for
/// n = 0 .. n_max + 1 so commutator diagonals x_{n+1} - x_n are available up
/// to the edge.
class FockTruncation {
 public:
  /// x_n = n (standard boson b').
  static FockTruncation standard(std::size_t n_max);
  /// x_n = n omega.
  static FockTruncation scaled(std::size_t n_max, double omega);
  /// Explicit weights x_0 .. x_{n_max+1}; x_0 = 0 and x_n > 0 for n >= 1.
  static FockTruncation from_weights(std::vector<double> weights);

  std::size_t n_max() const noexcept { return weights_.size() - 2; }
  std::size_t dim() const noexcept { return n_max() + 1; }
  std::size_t spinor_dim() const noexcept { return 2 * dim(); }

  double x(std::size_t n) const { return weights_.at(n); }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// log(x_1 x_2 ... x_n); 0 for n = 0.
  double log_factorial(std::size_t n) const;

  /// True when x_n = n exactly.
  bool is_standard() const;

 private:
  explicit FockTruncation(std::vector<double> weights);
  std::vector<double> weights_;
  std::vector<double> log_factorials_;
};

class SpinorState {
 public:
  explicit SpinorState(CVector coeffs);

  static SpinorState zero(std::size_t n_max);
  static SpinorState basis(std::size_t n_max, Spin s, std::size_t n);

  std::size_t n_max() const noexcept { return static_cast<std::size_t>(coeffs_.size()) / 2 - 1; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(coeffs_.size()); }
  const CVector& coeffs() const noexcept { return coeffs_; }

  cplx component(Spin s, std::size_t n) const;
  Vec2 block(std::size_t n) const;

  double norm2() const { return coeffs_.squaredNorm(); }
  /// <this|other>, antilinear in this.
  cplx inner(const SpinorState& other) const;

  friend SpinorState operator+(const SpinorState& a, const SpinorState& b);
  friend SpinorState operator-(const SpinorState& a, const SpinorState& b);
  friend SpinorState operator*(cplx c, const SpinorState& s);

 private:
  CVector coeffs_;
};

class FockOperator {
 public:
  /// Throws ShapeError unless the matrix is square with even dimension >= 4.
  explicit FockOperator(CMatrix m);

  static FockOperator identity(std::size_t n_max);
  static FockOperator zero(std::size_t n_max);

  std::size_t n_max() const noexcept { return static_cast<std::size_t>(m_.rows()) / 2 - 1; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }

  /// 2x2 spin block coupling Phi_m (column) to Phi_n (row).
  Mat2 block(std::size_t n, std::size_t m) const;
  /// Number-space operator <chi^s| op |chi^t>, of size (n_max+1)^2.
  CMatrix spin_component(Spin s, Spin t) const;

  FockOperator adjoint() const { return FockOperator(m_.adjoint()); }
  /// max |op - op^dagger|.
  double hermiticity_residual() const;

  SpinorState apply(const SpinorState& s) const;

  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(cplx c, const FockOperator& a);
  friend SpinorState operator*(const FockOperator& a, const SpinorState& s) { return a.apply(s); }

 private:
  CMatrix m_;
};

/// a, a^dagger and N' = diag(x_n) on H_N.
struct LadderOperators {
  CMatrix a;
  CMatrix a_dag;
  CMatrix number;
};

/// Generalized ladder for the truncation's weights; a^dagger annihilates
/// Phi_{n_max} (hard cutoff).
LadderOperators ladder(const FockTruncation& trunc);

/// I_2 (x) op in the interleaved basis. Throws ShapeError for non-square input.
FockOperator lift_to_spinor(const CMatrix& op);

/// spin (x) op: block (n, m) equals op(n, m) * spin.
FockOperator spin_kron(const Mat2& spin, const CMatrix& op);

/// Multiplies the spin block at number index n by m; other blocks unchanged.
SpinorState quaternion_apply(const Mat2& m, const SpinorState& s, std::size_t n);

/// Applies m to every spin block.
SpinorState quaternion_apply_all(const Mat2& m, const SpinorState& s);

}  // namespace qvcs
