#pragma once

#include <stdexcept>
#include <string>

namespace sympl {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates a structural invariant (bad multiplication table,
// non-symplectic generator, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Caller broke a precondition.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A hard size guard was hit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A matrix does not have the product shape an operation expects.
class PatternError : public Error {
 public:
  using Error::Error;
};

// The operation needs a larger rank than the group has.
class RankError : public UsageError {
 public:
  using UsageError::UsageError;
};

class ParseError : public Error {
 public:
  ParseError(std::string const& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace sympl
