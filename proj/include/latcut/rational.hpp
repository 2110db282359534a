// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT

#ifndef LATCUT_RATIONAL_HPP_
#define LATCUT_RATIONAL_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace latcut {

// Exact arithmetic backend. Kept behind aliases so the backend can be swapped
// (e.g. for GMP-based types) without touching the algorithms. Expression
// templates are disabled on purpose: `auto` deduction of lazy expression
// types that reference dead temporaries is a recurring source of
// use-after-free bugs, and for operands of this size the lazy evaluation
// buys nothing.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline double to_double(const Int& z) { return z.convert_to<double>(); }

// Exact lift of a finite double into the rationals (every finite double is a
// dyadic rational).
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite input");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  exp -= 53;
  Rat r(mant);
  if (exp >= 0) {
    r *= Rat(Int(1) << exp);
  } else {
    r /= Rat(Int(1) << (-exp));
  }
  return r;
}

// floor(q) as an integer.
inline Int floor_rat(const Rat& q) {
  Int n = numerator(q), d = denominator(q);  // d > 0 by normalization
  Int quot = n / d, rem = n % d;
  if (rem != 0 && n < 0) --quot;
  return quot;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

// Nearest integer with ties rounded up: floor(q + 1/2).
inline Int round_half_up(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

inline Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Int abs_int(const Int& n) { return n < 0 ? Int(-n) : n; }

}  // namespace latcut

#endif  // LATCUT_RATIONAL_HPP_
