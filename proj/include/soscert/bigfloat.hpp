#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "soscert/rational.hpp"

namespace soscert {

/// Arbitrary-precision binary float (MPFR value semantics).
///
/// Every value carries its own precision in bits; binary operations round
/// to the larger of the two operand precisions. Conversion from Rational
/// rounds to the requested precision, conversion back to Rational is exact
/// (a finite binary float is a rational number).
class BigFloat {
  public:
    explicit BigFloat(unsigned prec_bits = 53) { mpfr_init2(v_, prec_bits); mpfr_set_zero(v_, 1); }
    BigFloat(double d, unsigned prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_d(v_, d, MPFR_RNDN); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_rational(const Rational& q, unsigned prec_bits) {
        BigFloat r(prec_bits);
        mpfr_set_q(r.v_, q.backend().data(), MPFR_RNDN);
        return r;
    }
    static BigFloat from_int(long n, unsigned prec_bits) {
        BigFloat r(prec_bits);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }

    unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Exact conversion; requires a finite value.
    Rational to_rational() const;

    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binop(a, b, mpfr_add); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binop(a, b, mpfr_sub); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binop(a, b, mpfr_mul); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binop(a, b, mpfr_div); }
    BigFloat& operator+=(const BigFloat& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    BigFloat abs() const {
        BigFloat r(precision());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    /// Value rounded to a (usually lower) precision.
    BigFloat rounded(unsigned prec_bits) const {
        BigFloat r(prec_bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat sqrt() const {
        BigFloat r(precision());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }

    /// Scientific-notation string with enough digits to identify the value
    /// at this precision.
    std::string str() const;

  private:
    using mpfr_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static BigFloat binop(const BigFloat& a, const BigFloat& b, mpfr_fn fn) {
        BigFloat r(a.precision() > b.precision() ? a.precision() : b.precision());
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

}  // namespace soscert
