// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#include "revert/rational.hpp"

namespace revert {

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt out = 1;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

BigInt binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  for (int j = 1; j <= k; ++j) {
    out *= n - k + j;
    out /= j;  // exact: product of j consecutive integers is divisible by j!
  }
  return out;
}

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (base == 0 && exponent < 0) {
    throw std::domain_error("rational_pow: zero base with negative exponent");
  }
  Rational acc = 1;
  Rational b = base;
  unsigned long e =
      exponent > 0 ? static_cast<unsigned long>(exponent) : static_cast<unsigned long>(-exponent);
  while (e != 0) {
    if (e & 1UL) acc *= b;
    b *= b;
    e >>= 1;
  }
  if (exponent < 0) acc = Rational(1) / acc;
  return acc;
}

}  // namespace revert
