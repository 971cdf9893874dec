#include "soscert/exact_linalg.hpp"

#include <stdexcept>

namespace soscert {

RatMat rat_zero_matrix(std::size_t rows, std::size_t cols) {
    return RatMat(rows, RatVec(cols, Rational(0)));
}

RatMat rat_identity(std::size_t n) {
    RatMat a = rat_zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
    return a;
}

namespace {

// One elimination frame: pivot value and the pivot row restricted to the
// not-yet-eliminated indices, recorded so an indefiniteness witness found in
// a Schur complement can be lifted back to the original coordinates.
struct SchurFrame {
    Rational d;
    RatVec row;  // off-diagonal pivot row over the remaining block
};

// Lift a witness through the elimination stack. For A = [[d, a^T],[a, B]]
// and y' with y'^T S y' < 0 (S the Schur complement), the extension
// y = (-a^T y'/d, y') satisfies y^T A y = y'^T S y'.
RatVec lift_witness(RatVec w, const std::vector<SchurFrame>& frames) {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
        Rational dot(0);
        for (std::size_t i = 0; i < w.size(); ++i) dot += it->row[i] * w[i];
        RatVec next;
        next.reserve(w.size() + 1);
        next.push_back(-dot / it->d);
        for (auto& x : w) next.push_back(std::move(x));
        w = std::move(next);
    }
    return w;
}

}  // namespace

ExactLdlt exact_ldlt(const RatMat& A0) {
    const std::size_t m = A0.size();
    ExactLdlt out;
    out.perm.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.perm[i] = i;
    out.L = rat_identity(m);
    out.D.assign(m, Rational(0));

    RatMat A = A0;  // working copy, permuted in place
    std::vector<SchurFrame> frames;

    auto swap_rows_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(A[a], A[b]);
        for (std::size_t r = 0; r < m; ++r) std::swap(A[r][a], A[r][b]);
        std::swap(out.perm[a], out.perm[b]);
        // Only columns < t of L are populated at swap time (t = current step);
        // swapping full rows keeps those consistent.
        std::swap(out.L[a], out.L[b]);
        for (std::size_t r = 0; r < m; ++r) std::swap(out.L[r][a], out.L[r][b]);
        // Frame rows from step s cover coordinates s+1..m-1 and must follow
        // the same reordering.
        for (std::size_t s = 0; s < frames.size(); ++s)
            std::swap(frames[s].row[a - s - 1], frames[s].row[b - s - 1]);
    };

    auto finish_witness = [&](RatVec w) {
        out.witness = lift_witness(std::move(w), frames);
        RatVec orig(m, Rational(0));
        for (std::size_t i = 0; i < m; ++i) orig[out.perm[i]] = out.witness[i];
        out.witness = std::move(orig);
        out.psd = false;
    };

    for (std::size_t t = 0; t < m; ++t) {
        // largest remaining diagonal
        std::size_t piv = t;
        for (std::size_t i = t + 1; i < m; ++i)
            if (A[i][i] > A[piv][piv]) piv = i;

        if (A[piv][piv] < 0) {
            // e_piv in the current Schur complement is a witness
            RatVec w(m - t, Rational(0));
            w[piv - t] = 1;
            finish_witness(std::move(w));
            return out;
        }

        if (A[piv][piv] == 0) {
            // The largest remaining diagonal is zero: a negative diagonal
            // elsewhere or any nonzero off-diagonal entry refutes PSD.
            for (std::size_t i = t; i < m; ++i) {
                if (A[i][i] < 0) {
                    RatVec w(m - t, Rational(0));
                    w[i - t] = 1;
                    finish_witness(std::move(w));
                    return out;
                }
            }
            for (std::size_t i = t; i < m; ++i) {
                for (std::size_t j = i + 1; j < m; ++j) {
                    if (A[i][j] != 0) {
                        // 2x2 block [[0, b],[b, 0]]: (1, -sgn(b)) is negative
                        RatVec w(m - t, Rational(0));
                        w[i - t] = 1;
                        w[j - t] = A[i][j] > 0 ? Rational(-1) : Rational(1);
                        finish_witness(std::move(w));
                        return out;
                    }
                }
            }
            // remaining D entries stay zero, L stays identity there
            out.psd = true;
            return out;
        }

        swap_rows_cols(t, piv);
        const Rational d = A[t][t];
        out.D[t] = d;

        SchurFrame frame;
        frame.d = d;
        frame.row.reserve(m - t - 1);
        for (std::size_t i = t + 1; i < m; ++i) frame.row.push_back(A[t][i]);
        frames.push_back(std::move(frame));
        const RatVec& prow = frames.back().row;

        for (std::size_t i = t + 1; i < m; ++i) {
            Rational l = A[i][t] / d;
            out.L[i][t] = l;
            if (l != 0)
                for (std::size_t j = t + 1; j < m; ++j) A[i][j] -= l * prow[j - t - 1];
            A[i][t] = 0;
            A[t][i] = 0;
        }
    }
    out.psd = true;
    return out;
}

std::optional<RatVec> solve_linear_exact(RatMat A, RatVec b) {
    const std::size_t n = A.size();
    if (b.size() != n) throw std::invalid_argument("solve_linear_exact: dimension mismatch");
    std::vector<std::size_t> col_of_row(n, SIZE_MAX);
    std::vector<bool> row_used(n, false), col_used(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        // first unused row with a nonzero entry in an unused column
        std::size_t pr = SIZE_MAX, pc = SIZE_MAX;
        for (std::size_t r = 0; r < n && pr == SIZE_MAX; ++r) {
            if (row_used[r]) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (!col_used[c] && A[r][c] != 0) {
                    pr = r;
                    pc = c;
                    break;
                }
            }
        }
        if (pr == SIZE_MAX) break;  // no more pivots
        row_used[pr] = true;
        col_used[pc] = true;
        col_of_row[pr] = pc;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == pr || A[r][pc] == 0) continue;
            Rational f = A[r][pc] / A[pr][pc];
            for (std::size_t c = 0; c < n; ++c)
                if (A[pr][c] != 0) A[r][c] -= f * A[pr][c];
            b[r] -= f * b[pr];
        }
    }
    // zero rows must be consistent
    for (std::size_t r = 0; r < n; ++r)
        if (!row_used[r] && b[r] != 0) return std::nullopt;
    RatVec x(n, Rational(0));
    for (std::size_t r = 0; r < n; ++r)
        if (row_used[r]) x[col_of_row[r]] = b[r] / A[r][col_of_row[r]];
    return x;
}

std::optional<RatVec> solve_overdetermined_exact(RatMat M, RatVec c, const RatVec& fallback) {
    const std::size_t rows = M.size();
    const std::size_t cols = rows ? M[0].size() : fallback.size();
    if (fallback.size() != cols)
        throw std::invalid_argument("solve_overdetermined_exact: fallback size mismatch");
    std::vector<std::size_t> pivot_row_of_col(cols, SIZE_MAX);
    std::vector<bool> row_used(rows, false);
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t pr = SIZE_MAX;
        for (std::size_t r = 0; r < rows; ++r) {
            if (!row_used[r] && M[r][col] != 0) {
                pr = r;
                break;
            }
        }
        if (pr == SIZE_MAX) continue;  // free column
        row_used[pr] = true;
        pivot_row_of_col[col] = pr;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr || M[r][col] == 0) continue;
            Rational f = M[r][col] / M[pr][col];
            for (std::size_t cc = col; cc < cols; ++cc)
                if (M[pr][cc] != 0) M[r][cc] -= f * M[pr][cc];
            c[r] -= f * c[pr];
        }
    }
    for (std::size_t r = 0; r < rows; ++r)
        if (!row_used[r] && c[r] != 0) return std::nullopt;

    RatVec x(fallback);
    // Back-substitute pivot columns in reverse so later free/pivot values are known.
    for (std::size_t col = cols; col-- > 0;) {
        std::size_t pr = pivot_row_of_col[col];
        if (pr == SIZE_MAX) continue;
        Rational acc = c[pr];
        for (std::size_t cc = col + 1; cc < cols; ++cc) acc -= M[pr][cc] * x[cc];
        x[col] = acc / M[pr][col];
    }
    return x;
}

}  // namespace soscert
