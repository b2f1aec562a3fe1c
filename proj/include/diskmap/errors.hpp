#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diskmap {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (point outside the disk,
/// parameter out of range, unknown catalog name, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Expression evaluation hit a singular node (abs/log/pow at zero, division
/// by zero). `position` is the character offset of the offending node.
class EvalError : public DomainError {
 public:
  EvalError(const std::string& what, std::size_t position)
      : DomainError(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A jet is requested at a point where the map has no finite derivative.
class JetUndefined : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure failed to converge (Newton, quadrature refinement,
/// coefficient extraction).
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace diskmap
