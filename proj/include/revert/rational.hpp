// Copyright 2026 the revert authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

namespace revert {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("rational_from_double: non-finite value");
  }
  return Rational(x);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt factorial(int n);
BigInt binomial(int n, int k);

/// b^e for integer e (negative exponents allowed when b != 0).
Rational rational_pow(const Rational& base, long exponent);

}  // namespace revert
