#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "sepprob/errors.hpp"

namespace sepprob {

// Exact rational numbers. mpq_class keeps values canonical (lowest terms,
// positive denominator), which is exactly the invariant we need.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p/q" or "p". Decimal strings are rejected; exact inputs only.
inline Rational parse_rational(const std::string& s) {
  if (s.empty() || s.find('.') != std::string::npos)
    throw Error(ErrorCode::INVALID_ARGUMENT, "not an exact fraction: '" + s + "'");
  try {
    Rational r(s);
    if (r.get_den() == 0)
      throw Error(ErrorCode::INVALID_ARGUMENT, "zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::INVALID_ARGUMENT, "bad fraction: '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// True when r = m or m + 1/2 for integer m.
inline bool is_half_integer(const Rational& r) {
  return r.get_den() == 1 || r.get_den() == 2;
}

inline bool is_nonpositive_integer(const Rational& r) {
  return is_integer(r) && r <= 0;
}

// r^e for integer e (negative allowed; r must be nonzero then).
inline Rational pow_int(const Rational& r, long e) {
  if (e == 0) return 1;
  Rational base = e < 0 ? Rational(1) / r : r;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
  Rational acc = 1;
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace sepprob
