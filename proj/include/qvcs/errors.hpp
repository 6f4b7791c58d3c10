#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qvcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside its mathematical domain (angle range, vanishing lambda, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or unsupported configuration (bad truncation, weight sequence, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Input failed a validation check (non-Hermitian operator, unnormalized coefficients).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Singular point of a parameterization (e.g. gc = 2 in the weak-coupling model).
class SingularParameterError : public Error {
 public:
  using Error::Error;
};

/// A Gauss rule cannot integrate the requested moment exactly.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An angular grid aliases the requested Fourier mode.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// The excluded series mass beyond n_max exceeds the allowed bound.
class TailError : public Error {
 public:
  TailError(const std::string& what, double tail, std::size_t suggested_n_max)
      : Error(what), tail_(tail), suggested_n_max_(suggested_n_max) {}

  double tail() const noexcept { return tail_; }
  std::size_t suggested_n_max() const noexcept { return suggested_n_max_; }

 private:
  double tail_;
  std::size_t suggested_n_max_;
};

}  // namespace qvcs
