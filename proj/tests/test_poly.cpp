#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "soscert/poly_text.hpp"
#include "soscert/polynomial.hpp"
#include "test_util.hpp"

using namespace soscert;
using namespace soscert::testutil;

TEST_CASE("parse: perfect square trinomial in expanded form") {
    Polynomial p = parse_polynomial("x1^2 + 2*x1 + 1", 1);
    CHECK(p == poly(1, {{{2}, 1}, {{1}, 2}, {{0}, 1}}));
}

TEST_CASE("parse: zero polynomial has an empty term map") {
    Polynomial p = parse_polynomial("0", 3);
    CHECK(p.is_zero());
    CHECK(p.nvars() == 3);
}

TEST_CASE("parse: parenthesized square expands") {
    // hand expansion: (x1+1)^2 = x1^2 + 2 x1 + 1
    Polynomial p = parse_polynomial("(x1 + 1)^2", 1);
    CHECK(p == poly(1, {{{2}, 1}, {{1}, 2}, {{0}, 1}}));
}

TEST_CASE("parse: decimal literals become exact rationals") {
    Polynomial p = parse_polynomial("2.99", 1);
    CHECK(p.coeff(Monomial(std::vector<std::uint32_t>{0})) == Rational(299, 100));
    Polynomial q = parse_polynomial("3/4*x1 + 1.5e-2", 1);
    CHECK(q.coeff(mono({1})) == Rational(3, 4));
    CHECK(q.coeff(mono({0})) == Rational(15, 1000));
}

TEST_CASE("parse: errors carry position and reason") {
    CHECK_THROWS_AS(parse_polynomial("x1 + ", 1), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x3", 2), ParseError);      // index > nvars
    CHECK_THROWS_AS(parse_polynomial("x1^-2", 1), ParseError);   // negative exponent
    CHECK_THROWS_AS(parse_polynomial("x1 & x2", 2), ParseError);
    try {
        parse_polynomial("x1 + @", 1);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("arithmetic: difference of squares and additive inverse") {
    Polynomial a = parse_polynomial("x1 + 1", 1);
    Polynomial b = parse_polynomial("x1 - 1", 1);
    CHECK(a * b == parse_polynomial("x1^2 - 1", 1));

    Polynomial p = parse_polynomial("3*x1^2 - x1 + 7", 1);
    CHECK((p + p.scaled(Rational(-1))).is_zero());
}

TEST_CASE("arithmetic: binomial square expands term by term") {
    Polynomial p = parse_polynomial("(x1 + 2*x2)^2", 2);
    CHECK(p == poly(2, {{{2, 0}, 1}, {{1, 1}, 4}, {{0, 2}, 4}}));
}

TEST_CASE("arithmetic: nvars mismatch is an error") {
    Polynomial a = parse_polynomial("x1", 1);
    Polynomial b = parse_polynomial("x1 + x2", 2);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("expand_weighted_squares: worked bivariate quartic") {
    // 1/2*(2x1^2 - 3x2^2 + x1x2)^2 + 1/2*(x2^2 + 3x1x2)^2
    std::vector<WeightedSquareExact> terms = {
        {Rational(1, 2), parse_polynomial("2*x1^2 - 3*x2^2 + x1*x2", 2)},
        {Rational(1, 2), parse_polynomial("x2^2 + 3*x1*x2", 2)},
    };
    Polynomial f = expand_weighted_squares(terms);
    CHECK(f == parse_polynomial("2*x1^4 + 2*x1^3*x2 - x1^2*x2^2 + 5*x2^4", 2));
}

TEST_CASE("expand_weighted_squares: empty sum and single square") {
    CHECK(expand_weighted_squares({}).is_zero());
    std::vector<WeightedSquareExact> one = {{Rational(1), parse_polynomial("x1 + 1", 1)}};
    CHECK(expand_weighted_squares(one) == parse_polynomial("x1^2 + 2*x1 + 1", 1));
}

TEST_CASE("coeff_l2_distance: pinned values") {
    Polynomial f = parse_polynomial("x1^2 + x2", 2);
    CHECK(coeff_l2_distance(f, f).is_zero());

    Polynomial x1sq = parse_polynomial("x1^2", 1);
    Polynomial zero(1);
    CHECK(coeff_l2_distance(x1sq, zero).to_double() == doctest::Approx(1.0).epsilon(1e-30));

    // f = x1+x2, g = x1-x2: difference is 2*x2, norm sqrt(0^2 + 2^2) = 2
    Polynomial a = parse_polynomial("x1 + x2", 2);
    Polynomial b = parse_polynomial("x1 - x2", 2);
    CHECK(coeff_l2_distance(a, b).to_double() == doctest::Approx(2.0).epsilon(1e-30));
}

TEST_CASE("support and degree queries") {
    Polynomial p = parse_polynomial("x1^2 + 2*x1 + 1", 1);
    auto s = support(p);
    CHECK(s.size() == 3);

    CHECK(parse_polynomial("2*x1^4 + 5*x2^4", 2).total_degree() == 4);

    // float support excludes magnitudes at or below the threshold
    FloatPolynomial fp(2);
    fp.add_term(mono({1, 0}), BigFloat(1.0, 64));
    fp.add_term(mono({0, 1}), BigFloat(1e-9, 64));
    auto fs = support(fp, 1e-5);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0] == mono({1, 0}));
}

TEST_CASE("variables_used") {
    Polynomial p = parse_polynomial("x1^2 + x3", 3);
    auto vars = p.variables_used();
    CHECK(vars == std::set<int>{1, 3});
}

TEST_CASE("property: ring axioms on random polynomials") {
    Rng rng(20250811);
    for (int round = 0; round < 200; ++round) {
        int nvars = static_cast<int>(rng.uniform_int(1, 3));
        Polynomial p = random_polynomial(rng, nvars, 3, 4);
        Polynomial q = random_polynomial(rng, nvars, 3, 4);
        Polynomial r = random_polynomial(rng, nvars, 3, 4);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p + q == q + p);
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
    }
}

TEST_CASE("property: multiplication agrees with evaluation homomorphism") {
    Rng rng(77);
    for (int round = 0; round < 100; ++round) {
        int nvars = static_cast<int>(rng.uniform_int(1, 3));
        Polynomial p = random_polynomial(rng, nvars, 3, 4);
        Polynomial q = random_polynomial(rng, nvars, 3, 4);
        auto pt = random_point(rng, nvars);
        CHECK(evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt));
        CHECK(evaluate(p + q, pt) == evaluate(p, pt) + evaluate(q, pt));
    }
}

TEST_CASE("property: parse is a left inverse of print") {
    Rng rng(13);
    for (int round = 0; round < 200; ++round) {
        int nvars = static_cast<int>(rng.uniform_int(1, 4));
        Polynomial p = random_polynomial(rng, nvars, 4, 6);
        CHECK(parse_polynomial(print_polynomial(p), nvars) == p);
    }
}

TEST_CASE("property: weighted squares with nonnegative weights are nonnegative") {
    Rng rng(99);
    int points_checked = 0;
    while (points_checked < 1000) {
        int nvars = static_cast<int>(rng.uniform_int(1, 3));
        std::vector<WeightedSquareExact> terms;
        int k = static_cast<int>(rng.uniform_int(0, 3));
        for (int i = 0; i < k; ++i)
            terms.push_back({Rational(rng.uniform_int(0, 5), rng.uniform_int(1, 3)),
                             random_polynomial(rng, nvars, 2, 3)});
        Polynomial f = terms.empty() ? Polynomial(nvars) : expand_weighted_squares(terms);
        for (int j = 0; j < 10; ++j) {
            auto pt = random_point(rng, nvars);
            CHECK(evaluate(f, pt) >= 0);
            ++points_checked;
        }
    }
}

TEST_CASE("property: coeff_l2_distance is a metric") {
    Rng rng(4242);
    for (int round = 0; round < 50; ++round) {
        int nvars = static_cast<int>(rng.uniform_int(1, 3));
        Polynomial a = random_polynomial(rng, nvars, 3, 4);
        Polynomial b = random_polynomial(rng, nvars, 3, 4);
        Polynomial c = random_polynomial(rng, nvars, 3, 4);
        BigFloat dab = coeff_l2_distance(a, b);
        BigFloat dba = coeff_l2_distance(b, a);
        CHECK(dab == dba);  // symmetry: both sides round the same exact sum
        CHECK((coeff_l2_distance(a, a).is_zero()));
        if (a != b) CHECK(dab.sign() > 0);  // identity of indiscernibles
        double lhs = coeff_l2_distance(a, c).to_double();
        double rhs = dab.to_double() + coeff_l2_distance(b, c).to_double();
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("float polynomial round trip through text") {
    Rng rng(5);
    for (int round = 0; round < 20; ++round) {
        Polynomial p = random_polynomial(rng, 2, 3, 4);
        FloatPolynomial fp = to_float_polynomial(p, 128);
        std::string text = print_polynomial(fp);
        // parse as exact, compare against the exact image of fp
        Polynomial back = parse_polynomial(text, 2);
        Polynomial exact = to_exact_polynomial(fp);
        for (auto& [m, cv] : exact.terms()) {
            Rational diff = rat_abs(back.coeff(m) - cv);
            // printed with guard digits; error far below 1 ulp at 128 bits
            CHECK(diff <= rat_abs(cv) / Rational(Int(1) << 120));
        }
    }
}
