#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mahler {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's mathematical domain: lambda outside the
/// convergence disc, singular determinant, infinite group where a finite one
/// is required, non-reciprocal element where a reciprocal one is required.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Elements or ring elements from different groups (or malformed normal forms).
class GroupMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A configurable resource cap was hit (support growth, term count, overflow).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerical method failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a polynomial or group specifier, with a 0-based offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(message + " at position " + std::to_string(position)),
        position_(position),
        detail_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

}  // namespace mahler
