#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lensembed {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed arguments: non-coprime fractions, bad shapes,
/// indefinite forms where a definite one is required.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a search runs out of its node budget before finishing.
/// Never conflated with an empty result.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation that relies on the a_i >= 6 hypothesis is
/// called on a string outside that family.
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Floor of the square root of a nonnegative integer.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw InvalidInput("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

inline Integer floor_of(const Rational& r) {
  Integer n = boost::multiprecision::numerator(r);
  Integer d = boost::multiprecision::denominator(r);
  Integer q = n / d;  // truncates toward zero
  if (n % d != 0 && n < 0) --q;
  return q;
}

inline Integer ceil_of(const Rational& r) { return -floor_of(-r); }

/// Converts to int64, throwing if the value does not fit.
inline std::int64_t to_int64(const Integer& v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw InvalidInput("integer " + v.str() + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace lensembed
