#include "soscert/bigfloat.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace soscert {

Rational BigFloat::to_rational() const {
    if (!is_finite()) throw std::domain_error("BigFloat::to_rational: value not finite");
    if (is_zero()) return Rational(0);
    // v = m * 2^e with m an integer of at most `precision` bits.
    mpz_t m;
    mpz_init(m);
    mpfr_exp_t e = mpfr_get_z_2exp(m, v_);
    Int mant(m);
    mpz_clear(m);
    Rational r(mant);
    if (e >= 0) {
        r *= Rational(Int(1) << static_cast<unsigned>(e));
    } else {
        r /= Rational(Int(1) << static_cast<unsigned>(-e));
    }
    return r;
}

std::string BigFloat::str() const {
    // digits10 = ceil(bits * log10(2)) + 2 guard digits
    int digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 2;
    std::vector<char> buf(static_cast<size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits, v_);
    return std::string(buf.data());
}

}  // namespace soscert
