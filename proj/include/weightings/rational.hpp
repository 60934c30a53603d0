#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace wtg {

// mpq_class keeps values reduced with a positive denominator as long as every
// construction goes through make_rational / parse_rational (or arithmetic).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("zero denominator");
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("zero denominator");
  Rational q{num, den};
  q.canonicalize();
  return q;
}

/// Accepts "n" or "n/d" with an optional leading sign.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational", 0);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true)) throw ParseError("malformed rational '" + s + "'", 0);
  if (!valid_int(den, false)) throw ParseError("malformed rational '" + s + "'", slash + 1);
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'", slash + 1);
  return make_rational(n, d);
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline double to_double(const Rational& q) { return q.get_d(); }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Integer power; negative exponents require a nonzero base.
inline Rational pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw Error("division by zero in rational power");
    Rational inv = 1 / base;
    return pow(inv, -e);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational{num, den};
}

inline Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace wtg
