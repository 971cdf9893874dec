#pragma once

#include <vector>

#include "soscert/gram.hpp"

namespace soscert {

/// Minimum-norm-ish least-squares solve of min ||M x - rhs||_2 via
/// Householder QR with column pivoting at the entries' precision.
/// Columns whose pivot falls below rel_rank_tol * (first pivot) are treated
/// as rank-deficient and their solution components set to zero.
FloatVec qr_least_squares(FloatMat M, FloatVec rhs, double rel_rank_tol = 1e-30);

/// Symmetric pivoted LDL^T at float precision, pivoting on the largest
/// remaining diagonal. Stops when the largest remaining diagonal is
/// <= rank_eps * (first pivot), or not positive.
///
/// perm[i] = original index at permuted position i; L is unit lower
/// triangular with `rank` populated columns; D holds `rank` positive pivots.
struct TruncatedLdlt {
    std::vector<std::size_t> perm;
    FloatMat L;
    FloatVec D;
    std::size_t rank = 0;
};

TruncatedLdlt truncated_ldlt(const FloatMat& A, double rank_eps);

/// Smallest eigenvalue of a symmetric matrix, computed in double precision.
/// A hint only; exact checks stay authoritative.
double min_eigenvalue_hint(const RatMat& A);
double min_eigenvalue_hint(const FloatMat& A);

/// 2-norm condition number estimate of a dense matrix (double precision).
double condition_number_hint(const std::vector<std::vector<double>>& A);

}  // namespace soscert
