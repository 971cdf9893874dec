#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "soscert/conjecture.hpp"
#include "soscert/poly_text.hpp"
#include "soscert/reward.hpp"
#include "test_util.hpp"

using namespace soscert;
using namespace soscert::testutil;

namespace {

FloatPolynomial fp(const char* text, int nvars) {
    return to_float_polynomial(parse_polynomial(text, nvars), 128);
}

}  // namespace

TEST_CASE("accuracy_reward: pinned values") {
    Polynomial f = parse_polynomial("x1^2 + x2", 2);
    CHECK(accuracy_reward(f, to_float_polynomial(f, 128), 0.5) == 1.0);

    // distance 2 at alpha 0.5: 1/(1 + 0.5*2) = 0.5
    Polynomial a = parse_polynomial("x1 + x2", 2);
    CHECK(accuracy_reward(a, fp("x1 - x2", 2), 0.5) == doctest::Approx(0.5).epsilon(1e-12));

    // alpha = 0 degenerates to the constant 1
    CHECK(accuracy_reward(a, fp("x1", 2), 0.0) == 1.0);
}

TEST_CASE("format_reward: pinned cases") {
    CHECK(format_reward("(SOS Expression): (x1+1)^2", 1) == 1.0);
    CHECK(format_reward("x1^2 + 2*x1 + 1", 1) == 0.0);
    CHECK(format_reward("<SOS Expression>: -1*(x1)^2", 1) == 0.0);
}

TEST_CASE("sdr: pinned counts") {
    Polynomial f = parse_polynomial("x1^2 + x1*x2 + x2^2 + 1", 2);  // 4 monomials
    CHECK(sdr(f, to_float_polynomial(f, 128), 1e-5) == 0.0);

    // one missing (the constant), one spurious (x1): (1+1)/4 = 0.5
    FloatPolynomial hat = fp("x1^2 + x1*x2 + x2^2 + x1", 2);
    CHECK(sdr(f, hat, 1e-5) == 0.5);

    // empty conjecture: all four missing
    CHECK(sdr(f, FloatPolynomial(2), 1e-5) == 1.0);

    CHECK_THROWS_AS(sdr(Polynomial(2), hat, 1e-5), std::domain_error);
}

TEST_CASE("sdr: threshold removes tiny coefficients from the comparison") {
    Polynomial f = parse_polynomial("x1^2", 2);
    FloatPolynomial hat = fp("x1^2", 2);
    hat.add_term(mono({0, 1}), BigFloat(1e-9, 128));  // below tau: not spurious
    CHECK(sdr(f, hat, 1e-5) == 0.0);
    hat.add_term(mono({0, 1}), BigFloat(1e-3, 128));  // now above tau
    CHECK(sdr(f, hat, 1e-5) == 1.0);
}

TEST_CASE("structure_penalty: pinned cases") {
    RewardConfig cfg;  // lambda 0.5, rho_max 2, c_hard 0.5
    Polynomial f = parse_polynomial("x1^4 + 1", 1);
    auto [s0, h0] = structure_penalty(f, to_float_polynomial(f, 128), cfg);
    CHECK(s0 == 0.0);
    CHECK(h0 == 0.0);

    // conjecture mentions x2 while f lives in x1 only
    Polynomial f1 = parse_polynomial("x1^2", 2);
    auto [s1, h1] = structure_penalty(f1, fp("x2^2", 2), cfg);
    CHECK(h1 == 0.5);

    // degree blow-up is also hard
    auto [s2, h2] = structure_penalty(f1, fp("x1^4", 2), cfg);
    CHECK(h2 == 0.5);

    // soft penalty clamps at rho_max: SDR 10 -> min(10, 2) * 0.5 = 1.0
    Polynomial tiny = parse_polynomial("x1^2", 1);
    FloatPolynomial wild(1);
    for (std::uint32_t e = 0; e <= 9; ++e) {
        if (e == 2) continue;
        wild.add_term(mono({e}), BigFloat(1.0, 128));
    }
    // 1 missing + 9 spurious over 1 required = 10
    CHECK(sdr(tiny, wild, 1e-5) == 10.0);
    auto [s3, h3] = structure_penalty(tiny, wild, cfg);
    CHECK(s3 == 1.0);
    CHECK(h3 == 0.5);  // degree 9 > 2
}

TEST_CASE("total_reward: perfect candidate scores exactly 1.0 at defaults") {
    Polynomial f = parse_polynomial("x1^2 + 2*x1 + 1", 1);
    RewardBreakdown b = total_reward(f, "<SOS Expression>: (x1 + 1)^2", RewardConfig{});
    CHECK(b.r_acc == 1.0);
    CHECK(b.r_fmt == 1.0);
    CHECK(b.p_soft == 0.0);
    CHECK(b.p_hard == 0.0);
    CHECK(b.total == 1.0);  // 0.9*1 + 0.1*1 - 0, exact in doubles
}

TEST_CASE("total_reward: unparseable text scores against the zero polynomial") {
    Polynomial f = parse_polynomial("x1^2", 1);
    RewardBreakdown b = total_reward(f, "no expression here", RewardConfig{});
    CHECK(b.r_fmt == 0.0);
    CHECK(b.r_acc == doctest::Approx(1.0 / 1.5).epsilon(1e-12));  // dist 1, alpha 0.5
    CHECK(b.sdr == 1.0);
    CHECK(b.total == doctest::Approx(0.9 / 1.5 - 0.5).epsilon(1e-12));
}

TEST_CASE("total_reward: hard violation instantiates the formula") {
    Polynomial f = parse_polynomial("x1^2", 2);
    RewardConfig cfg;
    RewardBreakdown b = total_reward(f, "<SOS Expression>: (x2)^2", cfg);
    CHECK(b.p_hard == 0.5);
    CHECK(b.total == cfg.w_acc * b.r_acc + cfg.w_fmt * 1.0 - (b.p_soft + 0.5));
}

TEST_CASE("property: accuracy strictly decreases with distance") {
    Polynomial f = parse_polynomial("x1^2 + x1 + 1", 1);
    double prev = 2.0;
    for (int k = 0; k <= 6; ++k) {
        FloatPolynomial hat = to_float_polynomial(f, 128);
        hat.add_term(mono({1}), BigFloat(static_cast<double>(k), 128));
        double r = accuracy_reward(f, hat, 0.5);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("property: sdr zero iff thresholded supports match") {
    Rng rng(414);
    for (int round = 0; round < 200; ++round) {
        Polynomial f = random_polynomial(rng, 2, 3, 4);
        if (f.is_zero()) continue;
        FloatPolynomial hat = to_float_polynomial(random_polynomial(rng, 2, 3, 4), 128);
        double v = sdr(f, hat, 1e-5);
        auto sup_f = support(f);
        auto sup_h = support(hat, 1e-5);
        bool equal = sup_f.size() == sup_h.size() &&
                     std::equal(sup_f.begin(), sup_f.end(), sup_h.begin());
        CHECK((v == 0.0) == equal);
    }
}

TEST_CASE("property: breakdown identity holds to 1 ulp") {
    Rng rng(515);
    RewardConfig cfg;
    for (int round = 0; round < 1000; ++round) {
        Polynomial f = random_polynomial(rng, 2, 2, 4);
        if (f.is_zero()) continue;
        Polynomial q = random_polynomial(rng, 2, 1, 3);
        std::string text = "<SOS Expression>: (" + print_polynomial(q) + ")^2";
        RewardBreakdown b = total_reward(f, text, cfg);
        double recomposed = cfg.w_acc * b.r_acc + cfg.w_fmt * b.r_fmt - (b.p_soft + b.p_hard);
        CHECK(b.total == recomposed);
    }
}

TEST_CASE("property: a spurious monomial never raises the total") {
    Rng rng(616);
    RewardConfig cfg;
    for (int round = 0; round < 200; ++round) {
        Polynomial q = random_polynomial(rng, 2, 1, 3);
        if (q.is_zero()) continue;
        Polynomial f = q * q;
        if (f.is_zero()) continue;
        std::string base = "<SOS Expression>: (" + print_polynomial(q) + ")^2";
        RewardBreakdown b0 = total_reward(f, base, cfg);
        // add a spurious square on a fresh monomial, keeping shared terms fixed
        std::string spoiled = base + " + 0.25*(x1*x2^2)^2";
        RewardBreakdown b1 = total_reward(f, spoiled, cfg);
        CHECK(b1.total <= b0.total + 1e-15);
    }
}
