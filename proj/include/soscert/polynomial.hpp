#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "soscert/bigfloat.hpp"
#include "soscert/monomial.hpp"
#include "soscert/rational.hpp"

namespace soscert {

/// Sparse multivariate polynomial. Terms are kept in graded-lex order
/// (degree descending) and never store a zero coefficient, so iteration
/// yields the canonical form directly.
template <typename Coeff>
class PolynomialT {
  public:
    using TermMap = std::map<Monomial, Coeff, GradedLexDesc>;

    PolynomialT() : nvars_(0) {}
    explicit PolynomialT(int nvars) : nvars_(nvars) {
        if (nvars < 0) throw std::invalid_argument("polynomial: nvars must be >= 0");
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Adds c * m, dropping the term if the sum cancels.
    void add_term(const Monomial& m, const Coeff& c) {
        if (m.nvars() != static_cast<std::size_t>(nvars_))
            throw std::invalid_argument("polynomial: monomial arity mismatch");
        if (coeff_is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    Coeff coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Coeff() : it->second;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (auto& [m, c] : terms_)
            if (m.degree() > d) d = m.degree();
        return d;
    }

    std::set<int> variables_used() const {
        std::set<int> vars;
        for (auto& [m, c] : terms_)
            for (std::size_t i = 0; i < m.exps.size(); ++i)
                if (m.exps[i]) vars.insert(static_cast<int>(i) + 1);
        return vars;
    }

    friend PolynomialT operator+(const PolynomialT& a, const PolynomialT& b) {
        check_same_arity(a, b);
        PolynomialT r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend PolynomialT operator-(const PolynomialT& a, const PolynomialT& b) {
        check_same_arity(a, b);
        PolynomialT r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend PolynomialT operator*(const PolynomialT& a, const PolynomialT& b) {
        check_same_arity(a, b);
        PolynomialT r(a.nvars_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    PolynomialT operator-() const {
        PolynomialT r(nvars_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    PolynomialT scaled(const Coeff& k) const {
        PolynomialT r(nvars_);
        if (coeff_is_zero(k)) return r;
        for (auto& [m, c] : terms_) {
            Coeff p = c * k;
            if (!coeff_is_zero(p)) r.terms_.emplace(m, p);
        }
        return r;
    }

    friend bool operator==(const PolynomialT& a, const PolynomialT& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PolynomialT& a, const PolynomialT& b) { return !(a == b); }

  private:
    static bool coeff_is_zero(const Rational& c) { return c == 0; }
    static bool coeff_is_zero(const BigFloat& c) { return c.is_zero(); }
    static void check_same_arity(const PolynomialT& a, const PolynomialT& b) {
        if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial: nvars mismatch");
    }

    int nvars_;
    TermMap terms_;
};

using Polynomial = PolynomialT<Rational>;
using FloatPolynomial = PolynomialT<BigFloat>;

/// Exact-coefficient polynomial rounded to binary floats of the given precision.
FloatPolynomial to_float_polynomial(const Polynomial& p, unsigned prec_bits);

/// Exact rational image of a float polynomial (binary floats are rationals).
Polynomial to_exact_polynomial(const FloatPolynomial& p);

Polynomial constant_polynomial(int nvars, const Rational& c);
Polynomial monomial_polynomial(int nvars, const Monomial& m, const Rational& c = Rational(1));

/// Sum_i k_i * q_i^2, computed exactly.
struct WeightedSquareExact {
    Rational weight;
    Polynomial square;
};
Polynomial expand_weighted_squares(const std::vector<WeightedSquareExact>& terms);

/// Same expansion over float squares; exact rational weights, float coefficients.
struct WeightedSquare {
    Rational weight;
    FloatPolynomial square;
};
FloatPolynomial expand_weighted_squares_float(const std::vector<WeightedSquare>& terms,
                                              int nvars, unsigned prec_bits);

/// Euclidean norm of the coefficient-vector difference over the union of
/// supports. The sum of squares is accumulated exactly; only the final
/// square root rounds, at `prec_bits`.
BigFloat coeff_l2_distance(const Polynomial& f, const Polynomial& g, unsigned prec_bits = 128);
BigFloat coeff_l2_distance(const Polynomial& f, const FloatPolynomial& g, unsigned prec_bits = 128);
BigFloat coeff_l2_distance(const FloatPolynomial& f, const FloatPolynomial& g, unsigned prec_bits = 128);

/// Support of an exact polynomial: monomials with nonzero coefficient.
std::vector<Monomial> support(const Polynomial& p);
/// Support of a float polynomial: monomials with |coeff| > tau_coeff.
std::vector<Monomial> support(const FloatPolynomial& p, double tau_coeff = 1e-5);

/// Exact evaluation at a rational point (used by tests and the verifier).
Rational evaluate(const Polynomial& p, const std::vector<Rational>& point);

}  // namespace soscert
