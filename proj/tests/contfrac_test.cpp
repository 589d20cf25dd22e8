#include "lensembed/contfrac.hpp"

#include <numeric>

#include "gtest/gtest.h"
#include "lensembed/lattice.hpp"
#include "oracles.hpp"

namespace lensembed {
namespace {

TEST(ContFrac, ExpandExamples) {
  EXPECT_EQ(expand(Fraction(6, 1)), (CFString{6}));
  EXPECT_EQ(expand(Fraction(35, 6)), (CFString{6, 6}));
  EXPECT_EQ(expand(Fraction(6, 5)), (CFString{2, 2, 2, 2, 2}));
}

TEST(ContFrac, EvalExamples) {
  EXPECT_EQ(eval(CFString{6}), Fraction(6, 1));
  EXPECT_EQ(eval(CFString{6, 6}), Fraction(35, 6));
  EXPECT_EQ(eval(CFString{2, 2}), Fraction(3, 2));
}

TEST(ContFrac, DualExamples) {
  EXPECT_EQ(dual(CFString{6, 6}), (CFString{2, 2, 2, 2, 3, 2, 2, 2, 2}));
  EXPECT_EQ(dual(CFString{6}), (CFString{2, 2, 2, 2, 2}));
  EXPECT_EQ(dual(CFString{6, 7}), (CFString{2, 2, 2, 2, 3, 2, 2, 2, 2, 2}));
}

TEST(ContFrac, FamilyMembership) {
  EXPECT_TRUE(in_family(CFString{6, 6}));
  EXPECT_FALSE(in_family(CFString{6, 5}));
  EXPECT_TRUE(in_family(CFString{7}));
}

TEST(ContFrac, RejectsInvalidFractions) {
  EXPECT_THROW(Fraction(6, 4), InvalidInput);
  EXPECT_THROW(Fraction(5, 5), InvalidInput);
  EXPECT_THROW(Fraction(3, 5), InvalidInput);
  EXPECT_THROW(Fraction(5, 0), InvalidInput);
  EXPECT_THROW(Fraction(5, -2), InvalidInput);
}

TEST(ContFrac, RejectsInvalidStrings) {
  EXPECT_THROW(CFString(std::vector<Integer>{}), InvalidInput);
  EXPECT_THROW((CFString{6, 1}), InvalidInput);
  EXPECT_THROW(point_rule_dual(CFString{6, 2, 6}), InvalidInput);
}

TEST(ContFrac, EvalMatchesRationalOracle) {
  for (const auto& digits : oracle::all_strings(2, 7, 4)) {
    const CFString s(std::vector<Integer>(digits.begin(), digits.end()));
    const Rational expected = oracle::continued_fraction_value(s.coeffs());
    const Fraction f = eval(s);
    EXPECT_EQ(Rational(f.p(), f.q()), expected) << s;
  }
}

// Every coprime p > q > 0 up to 500: round trip, involution, complement,
// length identity and point-rule agreement.
TEST(ContFrac, PropertiesUpTo500) {
  for (long long p = 2; p <= 500; ++p) {
    for (long long q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const Fraction f(p, q);
      const CFString s = expand(f);
      ASSERT_EQ(eval(s), f);
      const CFString d = dual(s);
      ASSERT_EQ(eval(d), Fraction(p, p - q));
      ASSERT_EQ(dual(d), s);
      ASSERT_EQ(Integer(d.length()), s.sum() - 2 * Integer(s.length()) + 1) << s;
      const bool all_three = std::all_of(s.coeffs().begin(), s.coeffs().end(),
                                         [](const Integer& a) { return a >= 3; });
      if (all_three) ASSERT_EQ(point_rule_dual(s), d) << s;
    }
  }
}

TEST(ContFrac, ArbitraryPrecision) {
  // Consecutive Fibonacci numbers F_201 / F_200: coprime, far beyond 64 bits,
  // with a short expansion.
  Integer a = 0, b = 1;
  for (int i = 0; i < 199; ++i) std::swap(a, b), b += a;
  const Fraction f(a + b, b);
  const CFString s = expand(f);
  EXPECT_GT(a + b, Integer(1) << 128);
  EXPECT_EQ(eval(s), f);
  EXPECT_EQ(dual(dual(s)), s);
  EXPECT_EQ(eval(dual(s)), f.complement());
  EXPECT_EQ(chain_determinant(s), a + b);

  const Integer big("340282366920938463463374607431768211457");  // 2^128 + 1
  EXPECT_EQ(expand(Fraction(big, 1)), CFString(std::vector<Integer>{big}));
}

}  // namespace
}  // namespace lensembed
