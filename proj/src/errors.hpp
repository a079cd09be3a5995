#pragma once

#include <stdexcept>
#include <string>

namespace frcone {

/// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value that violates a domain invariant (boundary cone point, n < 2, p = ∞, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Principal-branch power requested on (−∞, 0].
class BranchCutError : public Error {
 public:
  using Error::Error;
};

/// A theorem was queried outside its exponent-range hypothesis.
class RangeGateError : public Error {
 public:
  using Error::Error;
};

/// Test-function spec whose l entries do not match its variant.
class VariantMismatch : public Error {
 public:
  using Error::Error;
};

/// Test function outside the membership conditions of its family.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input; line and column are 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

}  // namespace frcone
