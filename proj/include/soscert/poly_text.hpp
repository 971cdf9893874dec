#pragma once

#include <stdexcept>
#include <string>

#include "soscert/polynomial.hpp"

namespace soscert {

/// Parse failure with the character offset where it happened.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error("at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
    std::size_t position() const { return pos_; }

  private:
    std::size_t pos_;
};

/// Parses the polynomial text syntax: variables x1..xn, operators + - * ^,
/// integer / decimal / rational (p/q) literals, parentheses. Decimal
/// literals become exact rationals (2.99 -> 299/100); scientific notation
/// is accepted. The result is fully expanded and canonical.
Polynomial parse_polynomial(const std::string& text, int nvars);

/// Canonical printing: graded-lex (degree-descending) term order,
/// coefficients as integers or a/b fractions. parse(print(p)) == p.
std::string print_polynomial(const Polynomial& p);

/// Float coefficients are printed in scientific notation with enough digits
/// for the value to survive a round trip at its own precision.
std::string print_polynomial(const FloatPolynomial& p);

std::string print_monomial(const Monomial& m);

/// Largest variable index mentioned in the text (0 when none); used to infer
/// nvars for problem files without a header.
int scan_max_variable_index(const std::string& text);

}  // namespace soscert
