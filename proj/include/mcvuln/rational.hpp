#pragma once

#include <gmpxx.h>

#include <string>

namespace mcvuln {

/// Exact rational value; canonical reduced form with positive denominator.
using Rational = mpq_class;

/// 2^e for any sign of e.
Rational pow2(long e);

/// r^e for e >= 0.
Rational rational_pow(const Rational& r, unsigned long e);

mpz_class binomial(unsigned long n, unsigned long k);
mpz_class factorial(unsigned long n);

/// Sum_{k >= start} r^k, requires 0 <= r < 1.
Rational geometric_tail(const Rational& r, unsigned long start);

double to_double(const Rational& r);

/// log2 of a positive rational, accurate far beyond double range.
double log2_rational(const Rational& r);

/// Canonical "num/den" form ("num" when the denominator is 1).
std::string to_fraction_string(const Rational& r);

/// Closed interval of rationals; lower == upper represents an exact value.
struct RationalInterval {
  Rational lower;
  Rational upper;

  bool exact() const { return lower == upper; }
  bool contains(const Rational& v) const { return lower <= v && v <= upper; }

  static RationalInterval point(Rational v) {
    RationalInterval r;
    r.lower = v;
    r.upper = std::move(v);
    return r;
  }
};

}  // namespace mcvuln
