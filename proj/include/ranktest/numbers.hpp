#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace ranktest {

// Counting uses arbitrary precision throughout; probabilities and set
// function values are exact rationals.
using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

inline long factorial_long(int n) {
  long r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

// multinomial(sum parts; parts...)
inline BigInt multinomial(const std::vector<long>& parts) {
  BigInt r = 1;
  long total = 0;
  for (long p : parts) {
    total += p;
    r *= binomial(total, p);
  }
  return r;
}

// "p/q" with canonical sign and gcd 1; plain "p" when q == 1.
inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace ranktest
