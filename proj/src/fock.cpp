#include "qvcs/fock.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qvcs/errors.hpp"

namespace qvcs {

Vec2 chi(Spin s) {
  Vec2 v = Vec2::Zero();
  v(static_cast<Eigen::Index>(spin_index(s))) = 1.0;
  return v;
}

// ---------------------------------------------------------------------------
// FockTruncation

FockTruncation::FockTruncation(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.size() < 3) {
    throw ConfigError("truncation needs n_max >= 1 (weights x_0 .. x_{n_max+1})");
  }
  if (weights_[0] != 0.0) throw ConfigError("weight sequence must start with x_0 = 0");
  log_factorials_.assign(weights_.size(), 0.0);
  for (std::size_t n = 1; n < weights_.size(); ++n) {
    if (!std::isfinite(weights_[n]) || weights_[n] <= 0.0) {
      throw ConfigError("weight x_" + std::to_string(n) + " must be finite and > 0");
    }
    log_factorials_[n] = log_factorials_[n - 1] + std::log(weights_[n]);
  }
}

FockTruncation FockTruncation::standard(std::size_t n_max) {
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  std::vector<double> w(n_max + 2);
  for (std::size_t n = 0; n < w.size(); ++n) w[n] = static_cast<double>(n);
  return FockTruncation(std::move(w));
}

FockTruncation FockTruncation::scaled(std::size_t n_max, double omega) {
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("weight scale omega must be > 0");
  std::vector<double> w(n_max + 2);
  for (std::size_t n = 0; n < w.size(); ++n) w[n] = static_cast<double>(n) * omega;
  return FockTruncation(std::move(w));
}

FockTruncation FockTruncation::from_weights(std::vector<double> weights) {
  return FockTruncation(std::move(weights));
}

double FockTruncation::log_factorial(std::size_t n) const { return log_factorials_.at(n); }

bool FockTruncation::is_standard() const {
  for (std::size_t n = 0; n < weights_.size(); ++n) {
    if (weights_[n] != static_cast<double>(n)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// SpinorState

SpinorState::SpinorState(CVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 4 || coeffs_.size() % 2 != 0) {
    throw ShapeError("spinor state length must be even and >= 4, got " +
                     std::to_string(coeffs_.size()));
  }
}

SpinorState SpinorState::zero(std::size_t n_max) {
  return SpinorState(CVector::Zero(static_cast<Eigen::Index>(2 * (n_max + 1))));
}

SpinorState SpinorState::basis(std::size_t n_max, Spin s, std::size_t n) {
  if (n > n_max) throw IndexError("basis index n exceeds n_max");
  CVector c = CVector::Zero(static_cast<Eigen::Index>(2 * (n_max + 1)));
  c(static_cast<Eigen::Index>(basis_index(s, n))) = 1.0;
  return SpinorState(std::move(c));
}

cplx SpinorState::component(Spin s, std::size_t n) const {
  if (n > n_max()) throw IndexError("component index exceeds n_max");
  return coeffs_(static_cast<Eigen::Index>(basis_index(s, n)));
}

Vec2 SpinorState::block(std::size_t n) const {
  if (n > n_max()) throw IndexError("block index exceeds n_max");
  return coeffs_.segment<2>(static_cast<Eigen::Index>(2 * n));
}

cplx SpinorState::inner(const SpinorState& other) const {
  if (other.dim() != dim()) throw ShapeError("inner product of states with different truncations");
  return coeffs_.dot(other.coeffs_);
}

SpinorState operator+(const SpinorState& a, const SpinorState& b) {
  if (a.dim() != b.dim()) throw ShapeError("state dimension mismatch");
  return SpinorState(a.coeffs_ + b.coeffs_);
}

SpinorState operator-(const SpinorState& a, const SpinorState& b) {
  if (a.dim() != b.dim()) throw ShapeError("state dimension mismatch");
  return SpinorState(a.coeffs_ - b.coeffs_);
}

SpinorState operator*(cplx c, const SpinorState& s) { return SpinorState(c * s.coeffs_); }

// ---------------------------------------------------------------------------
// FockOperator

FockOperator::FockOperator(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 4 || m_.rows() % 2 != 0) {
    throw ShapeError("spinor operator must be square with even dimension >= 4");
  }
}

FockOperator FockOperator::identity(std::size_t n_max) {
  const auto d = static_cast<Eigen::Index>(2 * (n_max + 1));
  return FockOperator(CMatrix::Identity(d, d));
}

FockOperator FockOperator::zero(std::size_t n_max) {
  const auto d = static_cast<Eigen::Index>(2 * (n_max + 1));
  return FockOperator(CMatrix::Zero(d, d));
}

Mat2 FockOperator::block(std::size_t n, std::size_t m) const {
  if (n > n_max() || m > n_max()) throw IndexError("block index exceeds n_max");
  return m_.block<2, 2>(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * m));
}

CMatrix FockOperator::spin_component(Spin s, Spin t) const {
  const auto d = static_cast<Eigen::Index>(n_max() + 1);
  CMatrix out(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      out(n, m) = m_(2 * n + static_cast<Eigen::Index>(spin_index(s)),
                     2 * m + static_cast<Eigen::Index>(spin_index(t)));
    }
  }
  return out;
}

double FockOperator::hermiticity_residual() const { return max_abs(m_ - m_.adjoint()); }

SpinorState FockOperator::apply(const SpinorState& s) const {
  if (s.dim() != dim()) throw ShapeError("operator/state dimension mismatch");
  return SpinorState(m_ * s.coeffs());
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim()) throw ShapeError("operator dimension mismatch");
  return FockOperator(a.m_ + b.m_);
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim()) throw ShapeError("operator dimension mismatch");
  return FockOperator(a.m_ - b.m_);
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim()) throw ShapeError("operator dimension mismatch");
  return FockOperator(a.m_ * b.m_);
}

FockOperator operator*(cplx c, const FockOperator& a) { return FockOperator(c * a.m_); }

// ---------------------------------------------------------------------------

LadderOperators ladder(const FockTruncation& trunc) {
  const auto d = static_cast<Eigen::Index>(trunc.dim());
  LadderOperators out{CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
  for (Eigen::Index n = 1; n < d; ++n) {
    out.a(n - 1, n) = std::sqrt(trunc.x(static_cast<std::size_t>(n)));
  }
  out.a_dag = out.a.adjoint();
  for (Eigen::Index n = 0; n < d; ++n) out.number(n, n) = trunc.x(static_cast<std::size_t>(n));
  return out;
}

FockOperator spin_kron(const Mat2& spin, const CMatrix& op) {
  if (op.rows() != op.cols()) throw ShapeError("number-space operator must be square");
  const Eigen::Index d = op.rows();
  CMatrix out = CMatrix::Zero(2 * d, 2 * d);
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      if (op(n, m) != cplx(0.0)) out.block<2, 2>(2 * n, 2 * m) = op(n, m) * spin;
    }
  }
  return FockOperator(std::move(out));
}

FockOperator lift_to_spinor(const CMatrix& op) { return spin_kron(Mat2::Identity(), op); }

SpinorState quaternion_apply(const Mat2& m, const SpinorState& s, std::size_t n) {
  if (n > s.n_max()) throw IndexError("quaternion_apply: index exceeds n_max");
  CVector c = s.coeffs();
  c.segment<2>(static_cast<Eigen::Index>(2 * n)) = m * s.block(n);
  return SpinorState(std::move(c));
}

SpinorState quaternion_apply_all(const Mat2& m, const SpinorState& s) {
  CVector c = s.coeffs();
  for (std::size_t n = 0; n <= s.n_max(); ++n) {
    c.segment<2>(static_cast<Eigen::Index>(2 * n)) = m * s.block(n);
  }
  return SpinorState(std::move(c));
}

}  // namespace qvcs
