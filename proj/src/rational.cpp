#include "mcvuln/rational.hpp"

#include <cmath>
#include <cstdlib>

#include "mcvuln/types.hpp"

namespace mcvuln {

Rational pow2(long e) {
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(e)));
  if (e >= 0) return Rational(power);
  Rational r(1);
  r /= Rational(power);
  return r;
}

Rational rational_pow(const Rational& r, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num().get_mpz_t(), r.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den().get_mpz_t(), r.get_den().get_mpz_t(), e);
  out.canonicalize();
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Rational geometric_tail(const Rational& r, unsigned long start) {
  if (r < 0 || r >= 1)
    throw UsageError("geometric tail requires a ratio in [0, 1)");
  return rational_pow(r, start) / (Rational(1) - r);
}

double to_double(const Rational& r) { return r.get_d(); }

double log2_rational(const Rational& r) {
  if (r <= 0) throw UsageError("log2 requires a positive rational");
  signed long num_exp = 0;
  signed long den_exp = 0;
  const double num_mant =
      mpz_get_d_2exp(&num_exp, r.get_num().get_mpz_t());
  const double den_mant =
      mpz_get_d_2exp(&den_exp, r.get_den().get_mpz_t());
  return (std::log2(num_mant) + static_cast<double>(num_exp)) -
         (std::log2(den_mant) + static_cast<double>(den_exp));
}

std::string to_fraction_string(const Rational& r) { return r.get_str(); }

}  // namespace mcvuln
