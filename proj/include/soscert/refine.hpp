#pragma once

#include <chrono>
#include <optional>

#include "soscert/gram.hpp"

namespace soscert {

/// Deadline passed through long-running stages; unset means no limit.
struct Deadline {
    std::optional<std::chrono::steady_clock::time_point> at;

    static Deadline none() { return {}; }
    static Deadline in_seconds(double s) {
        Deadline d;
        d.at = std::chrono::steady_clock::now() +
               std::chrono::microseconds(static_cast<long long>(s * 1e6));
        return d;
    }
    bool expired() const { return at && std::chrono::steady_clock::now() > *at; }
};

/// Factorized Gram representation: column i holds the coefficients of the
/// i-th square over the basis, so G = sum_i col_i col_i^T.
struct FactorMatrix {
    MonomialBasis basis;
    FloatMat columns;  // columns[i] is a length-m coefficient vector, i < k

    std::size_t k() const { return columns.size(); }
    std::size_t m() const { return basis.size(); }
};

struct RefineConfig {
    double tol_tau = 1e-15;
    int max_iters = 50;
    unsigned precision_bits = 256;
    double damping_init = 0.0;      // 0 = plain Gauss-Newton step first
    double damping_growth = 10.0;
    double damping_shrink = 0.25;
    int max_rejects_per_iter = 40;
    Deadline deadline;
};

struct RefineOutcome {
    FactorMatrix factor;
    GramNumeric gram;
    double theta_final = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string note;  // divergence/NaN diagnostics
    std::vector<double> theta_trace;  // theta after every accepted step
};

/// Weighted squares -> factor columns: column i = sqrt(weight_i) * coeff(q_i).
/// Every monomial of every square must lie in the basis.
FactorMatrix initial_factor(const std::vector<WeightedSquare>& parsed,
                            const MonomialBasis& basis, unsigned prec_bits);

/// theta = ||coeff(sum_i l_i^2 - f)||_2 at the factor's precision.
BigFloat backward_error(const Polynomial& f, const FactorMatrix& L);

/// Damped Gauss-Newton on the factor coefficients. Accepted steps never
/// increase theta; converged means theta < tol_tau.
RefineOutcome gauss_newton(const Polynomial& f, const FactorMatrix& L0, const RefineConfig& cfg);

/// G = sum_i col_i col_i^T at the factor's precision.
GramNumeric factor_to_gram(const FactorMatrix& L);

/// Diagnostics for tests: the residual vector r(L) over the canonical
/// residual row order, and the analytic Jacobian d r / d c_{i,alpha} with
/// column index i * m + alpha. The same row order is used by both.
FloatVec residual_vector(const Polynomial& f, const FactorMatrix& L, unsigned prec_bits);
FloatMat jacobian_matrix(const Polynomial& f, const FactorMatrix& L, unsigned prec_bits);

}  // namespace soscert
