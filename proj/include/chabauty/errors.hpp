#pragma once

#include <stdexcept>
#include <string>

namespace chabauty {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (singular matrix,
/// non-positive scale, wrong stratum, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A textual or JSON descriptor could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search exceeded its configured cap.
class EnumerationOverflow : public Error {
 public:
  using Error::Error;
};

/// An iterative numeric procedure failed; carries the last residual.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace chabauty
