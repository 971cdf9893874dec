#include "soscert/float_linalg.hpp"

#include <eigen3/Eigen/Dense>

#include <limits>
#include <stdexcept>

namespace soscert {

namespace {

unsigned mat_precision(const FloatMat& M) {
    unsigned p = 53;
    for (auto& row : M)
        for (auto& x : row) p = std::max(p, x.precision());
    return p;
}

}  // namespace

FloatVec qr_least_squares(FloatMat M, FloatVec rhs, double rel_rank_tol) {
    const std::size_t rows = M.size();
    const std::size_t cols = rows ? M[0].size() : 0;
    if (rhs.size() != rows) throw std::invalid_argument("qr_least_squares: dimension mismatch");
    const unsigned prec = mat_precision(M);
    const BigFloat zero(prec);

    std::vector<std::size_t> colperm(cols);
    for (std::size_t c = 0; c < cols; ++c) colperm[c] = c;

    // squared column norms for pivoting
    FloatVec colnorm(cols, zero);
    for (std::size_t c = 0; c < cols; ++c) {
        BigFloat s(prec);
        for (std::size_t r = 0; r < rows; ++r) s += M[r][c] * M[r][c];
        colnorm[c] = s;
    }

    const std::size_t steps = std::min(rows, cols);
    BigFloat first_pivot(prec);
    std::size_t rank = 0;
    BigFloat tol_factor(rel_rank_tol, 64);

    for (std::size_t k = 0; k < steps; ++k) {
        // column pivot: largest remaining squared norm
        std::size_t best = k;
        for (std::size_t c = k + 1; c < cols; ++c)
            if (colnorm[c] > colnorm[best]) best = c;
        if (best != k) {
            for (std::size_t r = 0; r < rows; ++r) std::swap(M[r][k], M[r][best]);
            std::swap(colnorm[k], colnorm[best]);
            std::swap(colperm[k], colperm[best]);
        }

        // recompute the pivot column's live norm (pivoting norms degrade)
        BigFloat alpha2(prec);
        for (std::size_t r = k; r < rows; ++r) alpha2 += M[r][k] * M[r][k];
        BigFloat alpha = alpha2.sqrt();
        if (k == 0) first_pivot = alpha;
        if (!alpha.is_finite() || alpha.is_zero() || alpha < first_pivot * tol_factor) break;
        rank = k + 1;

        // Householder vector v = x - sign(x0)*||x|| e1 (stored in M[k..][k])
        if (M[k][k].sign() >= 0) alpha = -alpha;
        BigFloat v0 = M[k][k] - alpha;
        // apply H = I - 2 v v^T / (v^T v) to remaining columns and rhs
        BigFloat vtv = v0 * v0;
        for (std::size_t r = k + 1; r < rows; ++r) vtv += M[r][k] * M[r][k];
        if (vtv.is_zero()) break;
        M[k][k] = v0;  // store v in place temporarily

        auto apply = [&](auto&& get, auto&& set) {
            BigFloat dot(prec);
            for (std::size_t r = k; r < rows; ++r) dot += M[r][k] * get(r);
            BigFloat f = (dot + dot) / vtv;
            if (f.is_zero()) return;
            for (std::size_t r = k; r < rows; ++r) set(r, get(r) - f * M[r][k]);
        };
        for (std::size_t c = k + 1; c < cols; ++c) {
            apply([&](std::size_t r) { return M[r][c]; },
                  [&](std::size_t r, const BigFloat& x) { M[r][c] = x; });
        }
        apply([&](std::size_t r) { return rhs[r]; },
              [&](std::size_t r, const BigFloat& x) { rhs[r] = x; });

        // finalize R entries for this column
        M[k][k] = alpha;
        for (std::size_t r = k + 1; r < rows; ++r) M[r][k] = zero;

        // downdate remaining column norms
        for (std::size_t c = k + 1; c < cols; ++c) {
            colnorm[c] -= M[k][c] * M[k][c];
            if (colnorm[c].sign() < 0) colnorm[c] = zero;
        }
    }

    // back-substitute over the rank x rank leading block
    FloatVec xp(cols, zero);
    for (std::size_t i = rank; i-- > 0;) {
        BigFloat acc = rhs[i];
        for (std::size_t j = i + 1; j < rank; ++j) acc -= M[i][j] * xp[j];
        xp[i] = acc / M[i][i];
    }
    FloatVec x(cols, zero);
    for (std::size_t c = 0; c < cols; ++c) x[colperm[c]] = xp[c];
    return x;
}

TruncatedLdlt truncated_ldlt(const FloatMat& A0, double rank_eps) {
    const std::size_t m = A0.size();
    const unsigned prec = mat_precision(A0);
    TruncatedLdlt out;
    out.perm.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.perm[i] = i;
    out.L.assign(m, FloatVec(m, BigFloat(prec)));
    for (std::size_t i = 0; i < m; ++i) out.L[i][i] = BigFloat(1.0, prec);

    FloatMat A = A0;
    BigFloat eps(rank_eps, 64);
    BigFloat threshold(prec);  // rank_eps * first pivot, set at step 0

    for (std::size_t t = 0; t < m; ++t) {
        std::size_t piv = t;
        for (std::size_t i = t + 1; i < m; ++i)
            if (A[i][i] > A[piv][piv]) piv = i;
        if (t == 0) threshold = A[piv][piv] * eps;
        if (!(A[piv][piv] > threshold) || A[piv][piv].sign() <= 0) break;

        if (piv != t) {
            std::swap(A[piv], A[t]);
            for (std::size_t r = 0; r < m; ++r) std::swap(A[r][piv], A[r][t]);
            std::swap(out.perm[piv], out.perm[t]);
            std::swap(out.L[piv], out.L[t]);
            for (std::size_t r = 0; r < m; ++r) std::swap(out.L[r][piv], out.L[r][t]);
        }
        BigFloat d = A[t][t];
        out.D.push_back(d);
        out.rank = t + 1;
        for (std::size_t i = t + 1; i < m; ++i) {
            BigFloat l = A[i][t] / d;
            out.L[i][t] = l;
            if (l.is_zero()) continue;
            for (std::size_t j = t + 1; j <= i; ++j) {
                A[i][j] -= l * A[t][j];
                A[j][i] = A[i][j];
            }
        }
    }
    return out;
}

namespace {

Eigen::MatrixXd to_eigen(const RatMat& A) {
    Eigen::MatrixXd M(A.size(), A.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                A[i][j].convert_to<double>();
    return M;
}

Eigen::MatrixXd to_eigen(const FloatMat& A) {
    Eigen::MatrixXd M(A.size(), A.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = A[i][j].to_double();
    return M;
}

}  // namespace

double min_eigenvalue_hint(const RatMat& A) {
    if (A.empty()) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(A));
    return es.eigenvalues().minCoeff();
}

double min_eigenvalue_hint(const FloatMat& A) {
    if (A.empty()) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(A));
    return es.eigenvalues().minCoeff();
}

double condition_number_hint(const std::vector<std::vector<double>>& A) {
    if (A.empty()) return 1.0;
    Eigen::MatrixXd M(A.size(), A[0].size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[0].size(); ++j)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = A[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    return smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
}

}  // namespace soscert
