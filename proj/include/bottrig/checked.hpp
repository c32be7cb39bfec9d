#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bottrig {

/// Raised when an exact integer operation would leave the int64 range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Operands live over towers of different heights.
class HeightMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller-side contract was broken (malformed tower, non-automorphism, ...).
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A derived condition failed where the mathematics says it must hold.
/// Seeing this means the implementation is wrong, not the input.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
  return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

// a*b + c, accumulated without intermediate wraparound.
inline std::int64_t fma(std::int64_t a, std::int64_t b, std::int64_t c) { return add(mul(a, b), c); }

}  // namespace checked
}  // namespace bottrig
