#include "soscert/basis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace soscert {

unsigned long long binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned long long r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

namespace {

void enumerate_box(std::size_t var, Monomial& cur, std::uint32_t deg_so_far,
                   const std::vector<std::uint32_t>& lo, const std::vector<std::uint32_t>& hi,
                   std::uint32_t deg_lo, std::uint32_t deg_hi, std::vector<Monomial>& out) {
    if (var == cur.exps.size()) {
        if (deg_so_far >= deg_lo) out.push_back(cur);
        return;
    }
    for (std::uint32_t e = lo[var]; e <= hi[var]; ++e) {
        if (deg_so_far + e > deg_hi) break;
        cur.exps[var] = e;
        enumerate_box(var + 1, cur, deg_so_far + e, lo, hi, deg_lo, deg_hi, out);
    }
    cur.exps[var] = 0;
}

}  // namespace

MonomialBasis full_basis(int nvars, int half_degree, std::size_t size_cap) {
    if (nvars < 1) throw std::invalid_argument("full_basis: nvars must be >= 1");
    if (half_degree < 0) throw std::invalid_argument("full_basis: half_degree must be >= 0");
    unsigned long long count = binomial(static_cast<unsigned>(nvars + half_degree),
                                        static_cast<unsigned>(half_degree));
    if (count > size_cap)
        throw std::length_error("full_basis: size " + std::to_string(count) +
                                " exceeds cap " + std::to_string(size_cap));
    std::vector<std::uint32_t> lo(static_cast<std::size_t>(nvars), 0);
    std::vector<std::uint32_t> hi(static_cast<std::size_t>(nvars),
                                  static_cast<std::uint32_t>(half_degree));
    std::vector<Monomial> mons;
    Monomial cur(static_cast<std::size_t>(nvars));
    enumerate_box(0, cur, 0, lo, hi, 0, static_cast<std::uint32_t>(half_degree), mons);
    std::sort(mons.begin(), mons.end(), BasisOrder{});
    return MonomialBasis{nvars, std::move(mons)};
}

MonomialBasis support_restricted_basis(const Polynomial& f) {
    if (f.total_degree() % 2 != 0)
        throw std::invalid_argument("support_restricted_basis: polynomial degree must be even");
    MonomialBasis b;
    b.nvars = f.nvars();
    if (f.is_zero()) return b;

    const std::size_t n = static_cast<std::size_t>(f.nvars());
    std::vector<std::uint32_t> min_e(n, UINT32_MAX), max_e(n, 0);
    std::uint32_t min_deg = UINT32_MAX;
    for (auto& [m, c] : f.terms()) {
        for (std::size_t v = 0; v < n; ++v) {
            min_e[v] = std::min(min_e[v], m.exps[v]);
            max_e[v] = std::max(max_e[v], m.exps[v]);
        }
        min_deg = std::min(min_deg, m.degree());
    }
    std::vector<std::uint32_t> lo(n), hi(n);
    for (std::size_t v = 0; v < n; ++v) {
        lo[v] = (min_e[v] + 1) / 2;
        hi[v] = (max_e[v] + 1) / 2;
    }
    std::uint32_t deg_lo = (min_deg + 1) / 2;
    std::uint32_t deg_hi = f.total_degree() / 2;

    std::vector<Monomial> mons;
    Monomial cur(n);
    enumerate_box(0, cur, 0, lo, hi, deg_lo, deg_hi, mons);
    std::sort(mons.begin(), mons.end(), BasisOrder{});
    b.monomials = std::move(mons);
    return b;
}

MonomialBasis merge_bases(const MonomialBasis& a, const std::vector<Monomial>& extra) {
    std::set<Monomial, BasisOrder> all(a.monomials.begin(), a.monomials.end());
    for (auto& m : extra) {
        if (m.nvars() != static_cast<std::size_t>(a.nvars))
            throw std::invalid_argument("merge_bases: arity mismatch");
        all.insert(m);
    }
    MonomialBasis r;
    r.nvars = a.nvars;
    r.monomials.assign(all.begin(), all.end());
    return r;
}

}  // namespace soscert
