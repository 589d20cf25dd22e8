#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "lensembed/integer.hpp"

namespace lensembed {

/// A reduced fraction p/q with p > q > 0. Validated on construction.
class Fraction {
 public:
  Fraction(Integer p, Integer q);

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }

  /// p/(p-q), the fraction of the orientation-reversed lens space.
  Fraction complement() const { return Fraction(p_, p_ - q_); }

  friend bool operator==(const Fraction&, const Fraction&) = default;

 private:
  Integer p_;
  Integer q_;
};

std::ostream& operator<<(std::ostream& os, const Fraction& f);

/// Coefficients [a_1, ..., a_m] of a negative continued fraction
/// a_1 - 1/(a_2 - 1/(...)), every entry at least 2.
class CFString {
 public:
  explicit CFString(std::vector<Integer> coeffs);
  CFString(std::initializer_list<long long> coeffs);

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  std::size_t length() const { return coeffs_.size(); }
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }
  Integer sum() const;
  CFString reversed() const;

  friend bool operator==(const CFString&, const CFString&) = default;
  friend auto operator<=>(const CFString& a, const CFString& b) {
    return a.coeffs_ <=> b.coeffs_;
  }

 private:
  std::vector<Integer> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CFString& s);
std::string to_string(const CFString& s);

CFString expand(const Fraction& f);
Fraction eval(const CFString& s);

/// Expansion of p/(p-q) where p/q = eval(s).
CFString dual(const CFString& s);

/// Riemenschneider point rule written out directly:
/// [2^(a_1-2), 3, 2^(a_2-3), 3, ..., 3, 2^(a_m-2)] for m >= 2, and
/// [2^(a_1-1)] for m = 1. Requires every a_i >= 3.
CFString point_rule_dual(const CFString& s);

/// True when every coefficient is at least 6.
bool in_family(const CFString& s);

}  // namespace lensembed
