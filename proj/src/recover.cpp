#include "soscert/recover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soscert/float_linalg.hpp"
#include "soscert/poly_text.hpp"

namespace soscert {

PsdCheck exact_psd_check(const GramRational& g) {
    PsdCheck out;
    out.factors = exact_ldlt(g.entries);
    out.is_psd = out.factors.psd;
    return out;
}

std::size_t numerical_rank(const GramNumeric& g, double rank_eps) {
    return truncated_ldlt(g.entries, rank_eps).rank;
}

GramNumeric prune_redundant_monomials(const GramNumeric& g, double rank_eps) {
    const std::size_t m = g.dim();
    BigFloat eps(rank_eps, 64);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m; ++i) {
        BigFloat mx(64);
        for (std::size_t j = 0; j < m; ++j) {
            BigFloat a = g.entries[i][j].abs();
            if (a > mx) mx = a;
        }
        if (mx > eps) keep.push_back(i);
    }
    if (keep.size() == m) return g;
    GramNumeric out;
    out.basis.nvars = g.basis.nvars;
    for (auto i : keep) out.basis.monomials.push_back(g.basis.monomials[i]);
    out.entries.assign(keep.size(), FloatVec(keep.size(), BigFloat(53)));
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b) out.entries[a][b] = g.entries[keep[a]][keep[b]];
    return out;
}

namespace {

// 10^3 -> 10^6 -> 10^9 -> ... capped by cfg.denom_bound, always including
// the configured bound itself, at most max_denom_escalations + 1 attempts.
std::vector<Int> denominator_ladder(const RecoverConfig& cfg) {
    std::vector<Int> ladder;
    Int b(1000);
    while (static_cast<int>(ladder.size()) <= cfg.max_denom_escalations && b < cfg.denom_bound) {
        ladder.push_back(b);
        b *= 1000;
    }
    if (ladder.empty() || ladder.back() != cfg.denom_bound) {
        if (static_cast<int>(ladder.size()) > cfg.max_denom_escalations && !ladder.empty())
            ladder.pop_back();
        ladder.push_back(cfg.denom_bound);
    }
    return ladder;
}

// Appendix-style sufficiency diagnostic for the interior case:
// lambda_min(Gtilde) > ||G_N||_F^2 * kappa2(A)^2 * tau^2, all in doubles.
bool interior_bound_diagnostic(const GramRational& projected, const GramNumeric& gn,
                               const LinearSystem& sys, double tau) {
    double lambda = min_eigenvalue_hint(projected.entries);
    double fro2 = 0.0;
    for (auto& row : gn.entries)
        for (auto& x : row) {
            double d = x.to_double();
            fro2 += d * d;
        }
    std::vector<std::vector<double>> A(sys.rows.size(),
                                       std::vector<double>(sys.unknowns.size(), 0.0));
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        for (auto& [k, a] : sys.rows[r]) A[r][k] = a.convert_to<double>();
    double kappa = condition_number_hint(A);
    return lambda > fro2 * kappa * kappa * tau * tau;
}

}  // namespace

RecoverOutcome interior_recover(const Polynomial& f, const GramNumeric& gn,
                                const LinearSystem& sys, const RecoverConfig& cfg) {
    RecoverOutcome out;
    const std::size_t m = gn.dim();
    if (sys.gram_dim != m) {
        out.failure = "matching system dimension mismatch";
        return out;
    }

    for (const Int& bound : denominator_ladder(cfg)) {
        GramRational approx;
        approx.basis = gn.basis;
        approx.entries = rat_zero_matrix(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                Rational v = rationalize(gn.entries[i][j], bound);
                approx.entries[i][j] = v;
                approx.entries[j][i] = v;
            }

        GramRational projected;
        try {
            projected = project_onto_affine(approx, sys);
        } catch (const std::exception& e) {
            out.failure = std::string("projection failed: ") + e.what();
            return out;
        }
        if (gram_to_poly(projected) != f) {
            out.failure = "projected matrix does not reproduce f";
            return out;
        }
        PsdCheck psd = exact_psd_check(projected);
        if (psd.is_psd) {
            out.ok = true;
            out.gram = std::move(projected);
            out.denom_used = bound;
            out.interior_bound_holds = interior_bound_diagnostic(out.gram, gn, sys, cfg.tau_hint);
            return out;
        }
    }
    out.failure = "PSD check failed at every denominator bound";
    return out;
}

RecoverOutcome boundary_recover(const Polynomial& f, const GramNumeric& gn,
                                const LinearSystem& sys, const RecoverConfig& cfg) {
    RecoverOutcome out;
    const std::size_t m = gn.dim();
    if (sys.gram_dim != m) {
        out.failure = "matching system dimension mismatch";
        return out;
    }

    TruncatedLdlt fac = truncated_ldlt(gn.entries, cfg.rank_eps);
    const std::size_t r = fac.rank;
    if (r == 0) {
        if (f.is_zero()) {
            out.ok = true;
            out.gram = zero_gram(gn.basis);
            out.denom_used = 1;
            return out;
        }
        out.failure = "numerical rank 0 but f != 0";
        return out;
    }

    for (const Int& bound : denominator_ladder(cfg)) {
        // rational columns from the truncated factor via simultaneous
        // Diophantine approximation (common denominator per column)
        std::vector<RatVec> cols(r, RatVec(m, Rational(0)));
        for (std::size_t c = 0; c < r; ++c) {
            std::vector<Rational> entries;
            std::vector<std::size_t> where;
            for (std::size_t i = c + 1; i < m; ++i) {  // below the unit pivot
                Rational v = fac.L[i][c].to_rational();
                if (v != 0) {
                    entries.push_back(v);
                    where.push_back(i);
                }
            }
            cols[c][c] = 1;  // unit diagonal in permuted coordinates
            if (!entries.empty()) {
                DiophantineResult dio = simultaneous_diophantine(entries, bound, cfg.lll_delta);
                for (std::size_t t = 0; t < where.size(); ++t)
                    cols[c][where[t]] = Rational(dio.p[t], dio.q);
            }
        }

        // exact squares s_c = (column polynomial)^2 in original coordinates
        std::vector<Polynomial> squares;
        squares.reserve(r);
        for (std::size_t c = 0; c < r; ++c) {
            Polynomial q(f.nvars());
            for (std::size_t i = 0; i < m; ++i)
                if (cols[c][i] != 0) q.add_term(gn.basis.monomials[fac.perm[i]], cols[c][i]);
            squares.push_back(q * q);
        }

        // repair the pivot weights: solve sum_c d_c * s_c = f exactly over
        // the union support; free weights fall back to rationalized pivots
        std::map<Monomial, std::size_t, GradedLexDesc> row_of;
        for (auto& s : squares)
            for (auto& [mon, c] : s.terms()) row_of.emplace(mon, 0);
        for (auto& [mon, c] : f.terms()) row_of.emplace(mon, 0);
        std::size_t nrows = 0;
        for (auto& [mon, idx] : row_of) idx = nrows++;

        RatMat M = rat_zero_matrix(nrows, r);
        RatVec rhs(nrows, Rational(0));
        for (std::size_t c = 0; c < r; ++c)
            for (auto& [mon, v] : squares[c].terms()) M[row_of[mon]][c] = v;
        for (auto& [mon, v] : f.terms()) rhs[row_of[mon]] = v;

        RatVec fallback(r, Rational(0));
        for (std::size_t c = 0; c < r; ++c) fallback[c] = rationalize(fac.D[c], bound);

        auto d = solve_overdetermined_exact(M, rhs, fallback);
        if (!d) {
            out.failure = "identity unreachable within the rank-" + std::to_string(r) +
                          " structure at denominator bound " + bound.str();
            continue;
        }
        bool negative = false;
        for (auto& w : *d)
            if (w < 0) negative = true;
        if (negative) {
            out.failure = "repaired pivot weight turned negative";
            continue;
        }

        // assemble G = sum_c d_c col_c col_c^T in original coordinates
        GramRational g = zero_gram(gn.basis);
        for (std::size_t c = 0; c < r; ++c) {
            if ((*d)[c] == 0) continue;
            for (std::size_t i = 0; i < m; ++i) {
                if (cols[c][i] == 0) continue;
                for (std::size_t j = 0; j < m; ++j)
                    if (cols[c][j] != 0)
                        g.entries[fac.perm[i]][fac.perm[j]] += (*d)[c] * cols[c][i] * cols[c][j];
            }
        }
        if (gram_to_poly(g) != f) {
            out.failure = "assembled matrix does not reproduce f";
            continue;
        }
        // PSD holds by construction (nonnegative combination of rank-one
        // terms); the exact check stays authoritative.
        PsdCheck psd = exact_psd_check(g);
        if (!psd.is_psd) {
            out.failure = "exact PSD check failed on assembled matrix";
            continue;
        }
        out.ok = true;
        out.gram = std::move(g);
        out.denom_used = bound;
        return out;
    }
    if (out.failure.empty()) out.failure = "no denominator bound produced an exact identity";
    return out;
}

}  // namespace soscert
