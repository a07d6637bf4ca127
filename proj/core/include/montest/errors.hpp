#pragma once

#include <stdexcept>
#include <string>

namespace montest {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

// An operation's documented precondition does not hold for its arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Something that the mathematics guarantees did not happen. Always a bug or
// a numerically degenerate input.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class TableTooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace montest
