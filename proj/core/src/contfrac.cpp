#include "lensembed/contfrac.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace lensembed {

Fraction::Fraction(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {
  if (q_ <= 0 || p_ <= q_)
    throw InvalidInput("fraction must satisfy p > q > 0, got " + p_.str() + "/" + q_.str());
  if (boost::multiprecision::gcd(p_, q_) != 1)
    throw InvalidInput("gcd(" + p_.str() + ", " + q_.str() + ") != 1");
}

std::ostream& operator<<(std::ostream& os, const Fraction& f) {
  return os << f.p() << '/' << f.q();
}

CFString::CFString(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("continued fraction string is empty");
  for (const auto& a : coeffs_)
    if (a < 2) throw InvalidInput("continued fraction coefficient " + a.str() + " < 2");
}

CFString::CFString(std::initializer_list<long long> coeffs)
    : CFString(std::vector<Integer>(coeffs.begin(), coeffs.end())) {}

Integer CFString::sum() const {
  Integer s = 0;
  for (const auto& a : coeffs_) s += a;
  return s;
}

CFString CFString::reversed() const {
  return CFString(std::vector<Integer>(coeffs_.rbegin(), coeffs_.rend()));
}

std::ostream& operator<<(std::ostream& os, const CFString& s) {
  os << '[';
  for (std::size_t i = 0; i < s.length(); ++i) os << (i ? "," : "") << s[i];
  return os << ']';
}

std::string to_string(const CFString& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

CFString expand(const Fraction& f) {
  std::vector<Integer> out;
  Integer p = f.p();
  Integer q = f.q();
  // p = a*q - r with 0 <= r < q, a = ceil(p/q); continue with q/r.
  while (q != 0) {
    Integer a = (p + q - 1) / q;
    Integer r = a * q - p;
    out.push_back(a);
    p = q;
    q = r;
  }
  return CFString(std::move(out));
}

Fraction eval(const CFString& s) {
  // Back to front: value = a_i - 1/value, tracked as num/den.
  Integer num = s.coeffs().back();
  Integer den = 1;
  for (std::size_t i = s.length() - 1; i-- > 0;) {
    Integer next_num = s[i] * num - den;
    den = num;
    num = next_num;
  }
  return Fraction(num, den);
}

CFString dual(const CFString& s) {
  const Fraction f = eval(s);
  assert(boost::multiprecision::gcd(f.p(), f.p() - f.q()) == 1);
  return expand(f.complement());
}

CFString point_rule_dual(const CFString& s) {
  for (const auto& a : s.coeffs())
    if (a < 3) throw InvalidInput("point-rule transcription needs every a_i >= 3");
  std::vector<Integer> out;
  auto twos = [&](const Integer& count) {
    for (Integer k = 0; k < count; ++k) out.emplace_back(2);
  };
  const std::size_t m = s.length();
  if (m == 1) {
    twos(s[0] - 1);
    return CFString(std::move(out));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const bool end = (i == 0 || i + 1 == m);
    twos(s[i] - (end ? 2 : 3));
    if (i + 1 < m) out.emplace_back(3);
  }
  return CFString(std::move(out));
}

bool in_family(const CFString& s) {
  return std::all_of(s.coeffs().begin(), s.coeffs().end(),
                     [](const Integer& a) { return a >= 6; });
}

}  // namespace lensembed
