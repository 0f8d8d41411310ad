#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace krein {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated a documented precondition (non-Hermitian matrix,
/// non-signature J, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the disc where the operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Neumann-type series was requested outside its convergence region.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFieldError : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The doubled spectrum of chi(H) could not be split into symplectic pairs.
class PairingError : public Error {
 public:
  PairingError(const std::string& what, std::vector<double> spectrum)
      : Error(what), spectrum_(std::move(spectrum)) {}

  const std::vector<double>& spectrum() const noexcept { return spectrum_; }

 private:
  std::vector<double> spectrum_;
};

}  // namespace krein
