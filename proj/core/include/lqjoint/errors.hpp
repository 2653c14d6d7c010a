#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lqjoint {

// Base of every error the library throws. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid data: non-finite values, negative weights, asymmetric
// matrices, unreadable records. Carries a 1-based line number when the data
// came from a text source.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Inputs whose shapes or provenance do not agree (order, basis, file size).
class MismatchError : public InputError {
 public:
  using InputError::InputError;
};

// Invalid parameters: order below one, basis too small, missing process.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Requested polynomial degree exceeds the available basis or moment range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// The Gram matrix is singular to working precision and the regularization
// budget does not cover it.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, int effective_rank)
      : Error(what + " (effective rank " + std::to_string(effective_rank) + ")"),
        effective_rank_(effective_rank) {}

  int effective_rank() const noexcept { return effective_rank_; }

 private:
  int effective_rank_;
};

// A computation whose result is undefined for the given data, e.g. a joint
// matrix with zero total weight.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace lqjoint
