#include "soscert/polynomial.hpp"

#include <algorithm>

namespace soscert {

FloatPolynomial to_float_polynomial(const Polynomial& p, unsigned prec_bits) {
    FloatPolynomial r(p.nvars());
    for (auto& [m, c] : p.terms()) r.add_term(m, BigFloat::from_rational(c, prec_bits));
    return r;
}

Polynomial to_exact_polynomial(const FloatPolynomial& p) {
    Polynomial r(p.nvars());
    for (auto& [m, c] : p.terms()) r.add_term(m, c.to_rational());
    return r;
}

Polynomial constant_polynomial(int nvars, const Rational& c) {
    Polynomial r(nvars);
    r.add_term(Monomial(static_cast<std::size_t>(nvars)), c);
    return r;
}

Polynomial monomial_polynomial(int nvars, const Monomial& m, const Rational& c) {
    Polynomial r(nvars);
    r.add_term(m, c);
    return r;
}

Polynomial expand_weighted_squares(const std::vector<WeightedSquareExact>& terms) {
    if (terms.empty()) return Polynomial(0);
    Polynomial acc(terms.front().square.nvars());
    for (auto& t : terms) acc = acc + (t.square * t.square).scaled(t.weight);
    return acc;
}

FloatPolynomial expand_weighted_squares_float(const std::vector<WeightedSquare>& terms,
                                              int nvars, unsigned prec_bits) {
    FloatPolynomial acc(nvars);
    for (auto& t : terms) {
        FloatPolynomial sq = t.square * t.square;
        acc = acc + sq.scaled(BigFloat::from_rational(t.weight, prec_bits));
    }
    return acc;
}

namespace {

// Exact sum of squared coefficient differences over the union of supports.
template <typename CoeffToRat, typename P1, typename P2>
Rational l2_sq_exact(const P1& f, const P2& g, CoeffToRat to_rat_f, CoeffToRat to_rat_g) {
    if (f.nvars() != g.nvars()) throw std::invalid_argument("coeff_l2_distance: nvars mismatch");
    Rational sum(0);
    for (auto& [m, c] : f.terms()) {
        Rational d = to_rat_f(c);
        auto it = g.terms().find(m);
        if (it != g.terms().end()) d -= to_rat_g(it->second);
        sum += d * d;
    }
    for (auto& [m, c] : g.terms()) {
        if (f.terms().find(m) == f.terms().end()) {
            Rational d = to_rat_g(c);
            sum += d * d;
        }
    }
    return sum;
}

BigFloat rat_sqrt(const Rational& s, unsigned prec_bits) {
    return BigFloat::from_rational(s, 2 * prec_bits).sqrt().rounded(prec_bits);
}

Rational bf_to_rat(const BigFloat& c) { return c.to_rational(); }

}  // namespace

BigFloat coeff_l2_distance(const Polynomial& f, const Polynomial& g, unsigned prec_bits) {
    Rational s(0);
    if (f.nvars() != g.nvars()) throw std::invalid_argument("coeff_l2_distance: nvars mismatch");
    for (auto& [m, c] : f.terms()) {
        Rational d = c - g.coeff(m);
        s += d * d;
    }
    for (auto& [m, c] : g.terms())
        if (f.terms().find(m) == f.terms().end()) s += c * c;
    return rat_sqrt(s, prec_bits);
}

BigFloat coeff_l2_distance(const Polynomial& f, const FloatPolynomial& g, unsigned prec_bits) {
    Rational s(0);
    if (f.nvars() != g.nvars()) throw std::invalid_argument("coeff_l2_distance: nvars mismatch");
    for (auto& [m, c] : f.terms()) {
        auto it = g.terms().find(m);
        Rational d = c - (it == g.terms().end() ? Rational(0) : it->second.to_rational());
        s += d * d;
    }
    for (auto& [m, c] : g.terms()) {
        if (f.terms().find(m) == f.terms().end()) {
            Rational d = c.to_rational();
            s += d * d;
        }
    }
    return rat_sqrt(s, prec_bits);
}

BigFloat coeff_l2_distance(const FloatPolynomial& f, const FloatPolynomial& g, unsigned prec_bits) {
    return rat_sqrt(l2_sq_exact(f, g, bf_to_rat, bf_to_rat), prec_bits);
}

std::vector<Monomial> support(const Polynomial& p) {
    std::vector<Monomial> r;
    r.reserve(p.term_count());
    for (auto& [m, c] : p.terms()) r.push_back(m);
    return r;
}

std::vector<Monomial> support(const FloatPolynomial& p, double tau_coeff) {
    std::vector<Monomial> r;
    BigFloat tau(tau_coeff, 64);
    for (auto& [m, c] : p.terms())
        if (c.abs() > tau) r.push_back(m);
    return r;
}

Rational evaluate(const Polynomial& p, const std::vector<Rational>& point) {
    if (point.size() != static_cast<std::size_t>(p.nvars()))
        throw std::invalid_argument("evaluate: point arity mismatch");
    Rational acc(0);
    for (auto& [m, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            for (std::uint32_t e = 0; e < m.exps[i]; ++e) t *= point[i];
        acc += t;
    }
    return acc;
}

}  // namespace soscert
