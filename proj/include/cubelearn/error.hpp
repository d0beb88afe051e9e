#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubelearn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

class InvalidCube : public Error {
 public:
  using Error::Error;
};

/// Fixed-width coordinate arithmetic left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// An oracle (teacher, script, or solver) broke its contract or failed.
class OracleError : public Error {
 public:
  using Error::Error;
};

class SolverError : public OracleError {
 public:
  using OracleError::OracleError;
};

/// Iteration or probe budget exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A corner search ran away along an axis the oracles cannot bound.
class UnboundedSearch : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class Timeout : public Error {
 public:
  using Error::Error;
};

inline void check_dim(std::size_t expected, std::size_t got) {
  if (expected != got) throw DimensionMismatch(expected, got);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

}  // namespace cubelearn
