#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace soscert {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Int rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Largest integer <= q.
inline Int rat_floor(const Rational& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int quo = n / d;
    if (n < 0 && quo * d != n) --quo;
    return quo;
}

/// Smallest integer >= q.
inline Int rat_ceil(const Rational& q) { return -rat_floor(-q); }

/// Nearest integer; ties round away from zero.
inline Int rat_round(const Rational& q) {
    if (q >= 0) return rat_floor(q + Rational(1, 2));
    return rat_ceil(q - Rational(1, 2));
}

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// "n" when the denominator is 1, otherwise "n/d".
inline std::string rat_str(const Rational& q) {
    if (rat_den(q) == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

}  // namespace soscert
