#include "soscert/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "soscert/exact_linalg.hpp"

namespace soscert {

namespace {

Int dot(const IntVec& a, const IntVec& b) {
    Int s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Gso {
    std::vector<RatVec> mu;  // mu[i][j], j < i
    RatVec Bn;               // ||b*_i||^2

    void compute(const IntMat& B) {
        const std::size_t n = B.size();
        mu.assign(n, RatVec(n, Rational(0)));
        Bn.assign(n, Rational(0));
        // <b_i, b*_j> = c_ij - sum_{l<j} mu[j][l] * mu[i][l] * Bn[l]
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rational t(dot(B[i], B[j]));
                for (std::size_t l = 0; l < j; ++l) t -= mu[j][l] * mu[i][l] * Bn[l];
                if (Bn[j] == 0) throw std::invalid_argument("lll_reduce: dependent rows");
                mu[i][j] = t / Bn[j];
            }
            Rational t(dot(B[i], B[i]));
            for (std::size_t l = 0; l < i; ++l) t -= mu[i][l] * mu[i][l] * Bn[l];
            Bn[i] = t;
            if (Bn[i] == 0) throw std::invalid_argument("lll_reduce: dependent rows");
        }
    }
};

}  // namespace

IntMat lll_reduce(IntMat B, const Rational& delta) {
    if (delta <= Rational(1, 4) || delta > 1)
        throw std::invalid_argument("lll_reduce: delta must be in (1/4, 1]");
    const std::size_t n = B.size();
    if (n <= 1) return B;

    Gso g;
    g.compute(B);

    auto size_reduce = [&](std::size_t k, std::size_t l) {
        if (rat_abs(g.mu[k][l]) <= Rational(1, 2)) return;
        Int q = rat_round(g.mu[k][l]);
        for (std::size_t c = 0; c < B[k].size(); ++c) B[k][c] -= q * B[l][c];
        for (std::size_t j = 0; j < l; ++j) g.mu[k][j] -= Rational(q) * g.mu[l][j];
        g.mu[k][l] -= Rational(q);
    };

    std::size_t k = 1;
    while (k < n) {
        size_reduce(k, k - 1);
        Rational lhs = g.Bn[k];
        Rational rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.Bn[k - 1];
        if (lhs < rhs) {
            std::swap(B[k], B[k - 1]);
            // local GSO update for the swap
            Rational mu_v = g.mu[k][k - 1];
            Rational Bnew = g.Bn[k] + mu_v * mu_v * g.Bn[k - 1];
            g.mu[k][k - 1] = mu_v * g.Bn[k - 1] / Bnew;
            g.Bn[k] = g.Bn[k - 1] * g.Bn[k] / Bnew;
            g.Bn[k - 1] = Bnew;
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(g.mu[k][j], g.mu[k - 1][j]);
            for (std::size_t i = k + 1; i < n; ++i) {
                Rational t = g.mu[i][k];
                g.mu[i][k] = g.mu[i][k - 1] - mu_v * t;
                g.mu[i][k - 1] = t + g.mu[k][k - 1] * g.mu[i][k];
            }
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
            ++k;
        }
    }
    return B;
}

bool is_lll_reduced(const IntMat& B, const Rational& delta) {
    if (B.size() <= 1) return true;
    Gso g;
    g.compute(B);
    for (std::size_t i = 1; i < B.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (rat_abs(g.mu[i][j]) > Rational(1, 2)) return false;
        if (g.Bn[i] < (delta - g.mu[i][i - 1] * g.mu[i][i - 1]) * g.Bn[i - 1]) return false;
    }
    return true;
}

Rational rationalize(const Rational& x, const Int& denom_bound) {
    if (denom_bound < 1) throw std::invalid_argument("rationalize: denominator bound must be >= 1");
    // continued-fraction convergents p_k/q_k of x
    Int h_prev(1), h_prev2(0);  // numerators
    Int k_prev(0), k_prev2(1);  // denominators
    Rational rem = x;
    for (;;) {
        Int a = rat_floor(rem);
        Int h = a * h_prev + h_prev2;
        Int k = a * k_prev + k_prev2;
        if (k > denom_bound) return Rational(h_prev, k_prev);
        if (rem == Rational(a)) return Rational(h, k);  // exact
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        rem = Rational(1) / (rem - Rational(a));
    }
}

Rational rationalize(const BigFloat& x, const Int& denom_bound) {
    return rationalize(x.to_rational(), denom_bound);
}

namespace {

Rational dist_to_int(const Rational& x) {
    Rational r = x - Rational(rat_round(x));
    return rat_abs(r);
}

Rational max_error_for(const std::vector<Rational>& v, const Int& q) {
    Rational worst(0);
    for (auto& vi : v) {
        Rational e = dist_to_int(Rational(q) * vi);
        if (e > worst) worst = e;
    }
    return worst;
}

}  // namespace

DiophantineResult simultaneous_diophantine(const std::vector<Rational>& v, const Int& Q,
                                           const Rational& lll_delta) {
    if (Q < 1) throw std::invalid_argument("simultaneous_diophantine: Q must be >= 1");
    const std::size_t n = v.size();
    DiophantineResult best;
    best.q = 1;
    best.p.assign(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) best.p[i] = rat_round(v[i]);
    best.max_error = max_error_for(v, best.q);
    if (n == 0) return best;

    auto consider = [&](Int q) {
        if (q < 0) q = -q;
        if (q < 1 || q > Q) return;
        Rational err = max_error_for(v, q);
        if (err < best.max_error || (err == best.max_error && q < best.q)) {
            best.q = q;
            best.max_error = err;
            best.p.clear();
            for (auto& vi : v) best.p.push_back(rat_round(Rational(q) * vi));
        }
    };

    if (n == 1) {
        // continued fractions give the exact optimum in dimension one: the
        // largest convergent denominator <= Q minimizes |q v - p|
        Rational pq = rationalize(v[0], Q);
        consider(rat_den(pq));
        return best;
    }

    // Lagarias-style lattice: rows (t, N v_1, ..., N v_n), (0,...,N,...,0).
    // A short vector (q t, q N v_1 - p_1 N, ...) exposes a good denominator
    // q in its first coordinate. The weight t trades |q| against the
    // approximation error, so several scales are swept and every reduced
    // basis vector (and pairwise combination) contributes a candidate.
    const long scale_bits = 64;
    const Int N = Int(1) << scale_bits;
    IntVec w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = rat_round(Rational(N) * v[i]);

    for (int j = -4; j <= 4; ++j) {
        Int t = N / Q;
        if (j < 0) t >>= static_cast<unsigned>(-j);
        if (j > 0) t <<= static_cast<unsigned>(j);
        if (t < 1) t = 1;

        IntMat B(n + 1, IntVec(n + 1, Int(0)));
        B[0][0] = t;
        for (std::size_t i = 0; i < n; ++i) B[0][i + 1] = w[i];
        for (std::size_t i = 0; i < n; ++i) B[i + 1][i + 1] = N;

        IntMat R = lll_reduce(std::move(B), lll_delta);
        std::vector<Int> firsts;
        for (auto& row : R) firsts.push_back(row[0] / t);
        for (std::size_t a = 0; a < firsts.size(); ++a) {
            consider(firsts[a]);
            for (std::size_t b = a + 1; b < firsts.size(); ++b) {
                consider(firsts[a] + firsts[b]);
                consider(firsts[a] - firsts[b]);
            }
        }
    }
    return best;
}

}  // namespace soscert
