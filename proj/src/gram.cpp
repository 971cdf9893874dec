#include "soscert/gram.hpp"

#include <stdexcept>

#include "soscert/poly_text.hpp"

namespace soscert {

GramRational zero_gram(const MonomialBasis& basis) {
    GramRational g;
    g.basis = basis;
    g.entries = rat_zero_matrix(basis.size(), basis.size());
    return g;
}

Polynomial gram_to_poly(const GramRational& g) {
    Polynomial p(g.basis.nvars);
    const std::size_t m = g.dim();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const Rational& e = g.entries[i][j];
            if (e == 0) continue;
            Rational c = (i == j) ? e : e * 2;
            p.add_term(g.basis.monomials[i] * g.basis.monomials[j], c);
        }
    }
    return p;
}

FloatPolynomial gram_to_poly(const GramNumeric& g) {
    FloatPolynomial p(g.basis.nvars);
    const std::size_t m = g.dim();
    BigFloat two(2.0, 53);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const BigFloat& e = g.entries[i][j];
            if (e.is_zero()) continue;
            p.add_term(g.basis.monomials[i] * g.basis.monomials[j], i == j ? e : e * two);
        }
    }
    return p;
}

GramNumeric to_numeric(const GramRational& g, unsigned prec_bits) {
    GramNumeric n;
    n.basis = g.basis;
    const std::size_t m = g.dim();
    n.entries.assign(m, FloatVec(m, BigFloat(prec_bits)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            n.entries[i][j] = BigFloat::from_rational(g.entries[i][j], prec_bits);
    return n;
}

GramRational to_rational_entries(const GramNumeric& g) {
    GramRational r;
    r.basis = g.basis;
    const std::size_t m = g.dim();
    r.entries = rat_zero_matrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            // symmetrize: entries are stored once, mirrored on read
            Rational v = g.entries[i][j].to_rational();
            r.entries[i][j] = v;
            r.entries[j][i] = v;
        }
    return r;
}

std::size_t LinearSystem::unknown_index(std::size_t i, std::size_t j) const {
    // unknowns are emitted in (i, j) row-major upper-triangle order
    if (i > j) std::swap(i, j);
    // index = sum_{r<i} (m - r) + (j - i)
    return i * gram_dim - i * (i - 1) / 2 + (j - i);
}

LinearSystem matching_system(const Polynomial& f, const MonomialBasis& basis) {
    if (f.nvars() != basis.nvars)
        throw std::invalid_argument("matching_system: nvars mismatch");
    const std::size_t m = basis.size();
    LinearSystem sys;
    sys.gram_dim = m;
    sys.unknowns.reserve(m * (m + 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) sys.unknowns.emplace_back(i, j);

    // group unknowns by their product monomial
    std::map<Monomial, std::vector<std::pair<std::size_t, Rational>>, GradedLexDesc> groups;
    for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
        auto [i, j] = sys.unknowns[k];
        Monomial prod = basis.monomials[i] * basis.monomials[j];
        groups[prod].emplace_back(k, Rational(i == j ? 1 : 2));
    }
    // every monomial of f must be expressible
    for (auto& [mon, c] : f.terms()) {
        if (groups.find(mon) == groups.end())
            throw InexpressibleMonomial(mon, print_monomial(mon));
    }
    for (auto& [mon, entries] : groups) {
        sys.target_monomials.push_back(mon);
        sys.rows.push_back(entries);
        sys.rhs.push_back(f.coeff(mon));
    }
    return sys;
}

namespace {

// Shared core of the exact weighted projection. Weight w_k is 1 for diagonal
// unknowns and 2 for off-diagonal ones, matching the Frobenius inner product
// on symmetric matrices. Solves (A W^-1 A^T) z = (A y0 - b), then
// y = y0 - W^-1 A^T z.
RatVec project_vec(const LinearSystem& sys, const RatVec& y0) {
    const std::size_t nrows = sys.rows.size();
    RatVec winv(sys.unknowns.size());
    for (std::size_t k = 0; k < sys.unknowns.size(); ++k)
        winv[k] = sys.unknowns[k].first == sys.unknowns[k].second ? Rational(1) : Rational(1, 2);

    RatVec resid(nrows, Rational(0));
    for (std::size_t r = 0; r < nrows; ++r) {
        Rational acc(0);
        for (auto& [k, a] : sys.rows[r]) acc += a * y0[k];
        resid[r] = acc - sys.rhs[r];
    }

    // S = A W^-1 A^T, assembled through per-unknown contributions. Each
    // unknown lives in exactly one row for systems built by matching_system,
    // so S is diagonal there; the assembly stays correct in general.
    RatMat S = rat_zero_matrix(nrows, nrows);
    std::vector<std::vector<std::pair<std::size_t, Rational>>> unknown_rows(sys.unknowns.size());
    for (std::size_t r = 0; r < nrows; ++r)
        for (auto& [k, a] : sys.rows[r]) unknown_rows[k].emplace_back(r, a);
    for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
        for (auto& [r1, a1] : unknown_rows[k])
            for (auto& [r2, a2] : unknown_rows[k]) S[r1][r2] += a1 * a2 * winv[k];
    }

    auto z = solve_linear_exact(S, resid);
    if (!z)
        throw std::runtime_error("project_onto_affine: constraint rows inconsistent after dedup");

    RatVec y = y0;
    for (std::size_t r = 0; r < nrows; ++r) {
        if ((*z)[r] == 0) continue;
        for (auto& [k, a] : sys.rows[r]) y[k] -= winv[k] * a * (*z)[r];
    }
    return y;
}

GramRational gram_from_vec(const LinearSystem& sys, const MonomialBasis& basis, const RatVec& y) {
    GramRational g = zero_gram(basis);
    for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
        auto [i, j] = sys.unknowns[k];
        g.entries[i][j] = y[k];
        g.entries[j][i] = y[k];
    }
    return g;
}

}  // namespace

GramRational project_onto_affine(const GramRational& g0, const LinearSystem& sys) {
    if (g0.dim() != sys.gram_dim)
        throw std::invalid_argument("project_onto_affine: dimension mismatch");
    RatVec y0(sys.unknowns.size());
    for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
        auto [i, j] = sys.unknowns[k];
        y0[k] = g0.entries[i][j];
    }
    return gram_from_vec(sys, g0.basis, project_vec(sys, y0));
}

GramRational least_norm_gram(const LinearSystem& sys, const MonomialBasis& basis) {
    RatVec y0(sys.unknowns.size(), Rational(0));
    return gram_from_vec(sys, basis, project_vec(sys, y0));
}

bool satisfies_system(const GramRational& g, const LinearSystem& sys) {
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        Rational acc(0);
        for (auto& [k, a] : sys.rows[r]) {
            auto [i, j] = sys.unknowns[k];
            acc += a * g.entries[i][j];
        }
        if (acc != sys.rhs[r]) return false;
    }
    return true;
}

}  // namespace soscert
