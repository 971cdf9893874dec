#include "soscert/refine.hpp"

#include <map>
#include <stdexcept>

#include "soscert/float_linalg.hpp"

namespace soscert {

FactorMatrix initial_factor(const std::vector<WeightedSquare>& parsed,
                            const MonomialBasis& basis, unsigned prec_bits) {
    FactorMatrix L;
    L.basis = basis;
    for (auto& ws : parsed) {
        if (ws.weight < 0) throw std::invalid_argument("initial_factor: negative weight");
        if (ws.weight == 0) continue;
        BigFloat root = BigFloat::from_rational(ws.weight, prec_bits).sqrt();
        FloatVec col(basis.size(), BigFloat(prec_bits));
        for (auto& [mon, c] : ws.square.terms()) {
            auto idx = basis.index_of(mon);
            if (!idx)
                throw std::invalid_argument("initial_factor: square monomial outside basis");
            col[*idx] = root * c.rounded(prec_bits);
        }
        L.columns.push_back(std::move(col));
    }
    return L;
}

namespace {

// Residual coordinate system: the union of all basis pair products and the
// support of f, with the list of (a, b) index pairs feeding each row.
struct ResidualSpace {
    std::vector<Monomial> rows;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs;  // a <= b
    std::vector<Rational> f_coeff;

    std::size_t size() const { return rows.size(); }
};

ResidualSpace build_residual_space(const Polynomial& f, const MonomialBasis& basis) {
    std::map<Monomial, std::vector<std::pair<std::size_t, std::size_t>>, GradedLexDesc> grouped;
    const std::size_t m = basis.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b)
            grouped[basis.monomials[a] * basis.monomials[b]].emplace_back(a, b);
    for (auto& [mon, c] : f.terms()) grouped[mon];  // ensure a row exists

    ResidualSpace rs;
    for (auto& [mon, prs] : grouped) {
        rs.rows.push_back(mon);
        rs.pairs.push_back(prs);
        rs.f_coeff.push_back(f.coeff(mon));
    }
    return rs;
}

FloatVec residual(const ResidualSpace& rs, const FactorMatrix& L, unsigned prec) {
    FloatVec r(rs.size(), BigFloat(prec));
    for (std::size_t row = 0; row < rs.size(); ++row) {
        BigFloat acc(prec);
        for (auto& [a, b] : rs.pairs[row]) {
            for (auto& col : L.columns) {
                BigFloat t = col[a] * col[b];
                acc += (a == b) ? t : t + t;
            }
        }
        if (rs.f_coeff[row] != 0) acc -= BigFloat::from_rational(rs.f_coeff[row], prec);
        r[row] = acc;
    }
    return r;
}

BigFloat norm2(const FloatVec& v, unsigned prec) {
    BigFloat s(prec);
    for (auto& x : v) s += x * x;
    return s.sqrt();
}

bool all_finite(const FloatVec& v) {
    for (auto& x : v)
        if (!x.is_finite()) return false;
    return true;
}

}  // namespace

namespace {

FloatMat jacobian_impl(const ResidualSpace& rs, const FactorMatrix& L, unsigned prec) {
    const std::size_t m = L.m();
    const std::size_t k = L.k();
    FloatMat J(rs.size(), FloatVec(m * k, BigFloat(prec)));
    for (std::size_t row = 0; row < rs.size(); ++row) {
        for (auto& [a, b] : rs.pairs[row]) {
            for (std::size_t i = 0; i < k; ++i) {
                BigFloat ca = L.columns[i][a] + L.columns[i][a];
                BigFloat cb = L.columns[i][b] + L.columns[i][b];
                J[row][i * m + b] += ca;
                if (a != b) J[row][i * m + a] += cb;
            }
        }
    }
    return J;
}

}  // namespace

FloatVec residual_vector(const Polynomial& f, const FactorMatrix& L, unsigned prec_bits) {
    return residual(build_residual_space(f, L.basis), L, prec_bits);
}

FloatMat jacobian_matrix(const Polynomial& f, const FactorMatrix& L, unsigned prec_bits) {
    return jacobian_impl(build_residual_space(f, L.basis), L, prec_bits);
}

BigFloat backward_error(const Polynomial& f, const FactorMatrix& L) {
    unsigned prec = 53;
    for (auto& col : L.columns)
        for (auto& x : col) prec = std::max(prec, x.precision());
    ResidualSpace rs = build_residual_space(f, L.basis);
    return norm2(residual(rs, L, prec), prec);
}

GramNumeric factor_to_gram(const FactorMatrix& L) {
    unsigned prec = 53;
    for (auto& col : L.columns)
        for (auto& x : col) prec = std::max(prec, x.precision());
    GramNumeric g;
    g.basis = L.basis;
    const std::size_t m = L.m();
    g.entries.assign(m, FloatVec(m, BigFloat(prec)));
    for (auto& col : L.columns)
        for (std::size_t a = 0; a < m; ++a) {
            if (col[a].is_zero()) continue;
            for (std::size_t b = a; b < m; ++b) {
                BigFloat t = col[a] * col[b];
                g.entries[a][b] += t;
                if (b != a) g.entries[b][a] += t;
            }
        }
    return g;
}

RefineOutcome gauss_newton(const Polynomial& f, const FactorMatrix& L0, const RefineConfig& cfg) {
    const unsigned prec = cfg.precision_bits;
    RefineOutcome out;
    out.factor.basis = L0.basis;
    for (auto& col : L0.columns) {
        FloatVec c;
        c.reserve(col.size());
        for (auto& x : col) c.push_back(x.rounded(prec));
        out.factor.columns.push_back(std::move(c));
    }
    FactorMatrix& L = out.factor;
    const std::size_t m = L.m();
    const std::size_t k = L.k();
    const std::size_t cols = m * k;

    ResidualSpace rs = build_residual_space(f, L.basis);
    BigFloat tol(cfg.tol_tau, 64);

    FloatVec r = residual(rs, L, prec);
    BigFloat theta = norm2(r, prec);
    out.theta_trace.push_back(theta.to_double());
    double mu = cfg.damping_init;

    auto finish = [&](bool conv, const std::string& note) {
        out.converged = conv;
        out.note = note;
        out.theta_final = theta.to_double();
        out.gram = factor_to_gram(L);
        return out;
    };

    if (k == 0 || cols == 0) return finish(theta < tol, "empty factor");

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        if (theta < tol) return finish(true, "");
        if (cfg.deadline.expired()) return finish(false, "deadline");
        if (!theta.is_finite()) return finish(false, "nonfinite residual");

        // J[row][(i, alpha)] = 2 * c_{i, pair partner}
        FloatMat J = jacobian_impl(rs, L, prec);

        bool accepted = false;
        for (int rejects = 0; rejects <= cfg.max_rejects_per_iter; ++rejects) {
            // damped step: min || [J; sqrt(mu) I] d + [r; 0] ||
            FloatMat A = J;
            FloatVec rhs;
            rhs.reserve(rs.size() + (mu > 0 ? cols : 0));
            for (auto& x : r) rhs.push_back(-x);
            if (mu > 0) {
                BigFloat root_mu = BigFloat(mu, prec).sqrt();
                for (std::size_t c = 0; c < cols; ++c) {
                    FloatVec aug(cols, BigFloat(prec));
                    aug[c] = root_mu;
                    A.push_back(std::move(aug));
                    rhs.push_back(BigFloat(prec));
                }
            }
            FloatVec delta = qr_least_squares(std::move(A), std::move(rhs));

            FactorMatrix Lnew = L;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t a = 0; a < m; ++a) Lnew.columns[i][a] += delta[i * m + a];
            FloatVec rnew = residual(rs, Lnew, prec);
            BigFloat theta_new = all_finite(rnew) ? norm2(rnew, prec) : BigFloat(prec);

            if (all_finite(rnew) && theta_new.is_finite() && theta_new < theta) {
                L = std::move(Lnew);
                r = std::move(rnew);
                theta = theta_new;
                out.theta_trace.push_back(theta.to_double());
                mu = mu > 0 ? mu * cfg.damping_shrink : 0.0;
                accepted = true;
                break;
            }
            mu = mu > 0 ? mu * cfg.damping_growth : 1e-10;
            if (cfg.deadline.expired()) return finish(false, "deadline");
        }
        out.iterations = iter + 1;
        if (!accepted) return finish(theta < tol, "no accepted step");
    }
    return finish(theta < tol, theta < tol ? "" : "iteration limit");
}

}  // namespace soscert
