#pragma once

#include <optional>
#include <vector>

#include "soscert/rational.hpp"

namespace soscert {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

RatMat rat_zero_matrix(std::size_t rows, std::size_t cols);
RatMat rat_identity(std::size_t n);

/// Exact LDL^T of a symmetric rational matrix with symmetric pivoting that
/// selects the largest remaining diagonal entry at every step.
///
/// On success: P A P^T = L D L^T exactly, with L unit lower triangular and
/// all D_i >= 0; A is PSD iff the factorization completes this way. When the
/// matrix is not PSD, `witness` holds a rational vector y with y^T A y < 0.
/// perm[i] is the original index placed at permuted position i.
struct ExactLdlt {
    bool psd = false;
    std::vector<std::size_t> perm;
    RatMat L;
    RatVec D;
    RatVec witness;
};

ExactLdlt exact_ldlt(const RatMat& A);

/// Solves a square system with exact Gaussian elimination; nullopt when the
/// matrix is singular and the system is inconsistent for that pivot pattern.
/// Dependent-but-consistent rows are dropped.
std::optional<RatVec> solve_linear_exact(RatMat A, RatVec b);

/// Solves an overdetermined system M x = c exactly when it is consistent.
/// Free columns (if M is column-rank-deficient) take values from `fallback`.
/// Returns nullopt when the system is inconsistent.
std::optional<RatVec> solve_overdetermined_exact(RatMat M, RatVec c, const RatVec& fallback);

}  // namespace soscert
