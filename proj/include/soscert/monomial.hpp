#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace soscert {

/// A power product x1^e1 * ... * xn^en. The exponent vector always has
/// length nvars of the owning polynomial/basis.
struct Monomial {
    std::vector<std::uint32_t> exps;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

    std::size_t nvars() const { return exps.size(); }
    std::uint32_t degree() const { return std::accumulate(exps.begin(), exps.end(), 0u); }
    bool is_constant() const {
        for (auto e : exps)
            if (e) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.exps);
        for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
        return r;
    }

    /// a / b when b divides a componentwise; false otherwise.
    static bool try_divide(const Monomial& a, const Monomial& b, Monomial& out) {
        out.exps.assign(a.exps.size(), 0);
        for (std::size_t i = 0; i < a.exps.size(); ++i) {
            if (a.exps[i] < b.exps[i]) return false;
            out.exps[i] = a.exps[i] - b.exps[i];
        }
        return true;
    }
};

/// Within equal total degree both orders below agree: higher exponent on the
/// lowest-indexed variable comes first (x1^2 before x1*x2 before x2^2).

/// Term order used for canonical printing/iteration: degree descending.
struct GradedLexDesc {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return a.exps > b.exps;
    }
};

/// Term order used for monomial bases: degree ascending (1, x1, x2, x1^2, ...).
struct BasisOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exps > b.exps;
    }
};

}  // namespace soscert
