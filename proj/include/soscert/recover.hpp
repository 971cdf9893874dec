#pragma once

#include <optional>
#include <string>

#include "soscert/certificate.hpp"
#include "soscert/gram.hpp"
#include "soscert/lattice.hpp"

namespace soscert {

struct RecoverConfig {
    double rank_eps = 1e-8;          // numerical-rank threshold
    Int denom_bound = Int(1000000);  // rationalization denominator cap
    Rational lll_delta = Rational(3, 4);
    int max_denom_escalations = 3;
    double tau_hint = 1e-15;  // refinement tolerance, for the interior bound diagnostic
};

/// Exact LDL^T-based PSD decision. Factors on success, a rational witness
/// vector y with y^T G y < 0 on failure.
struct PsdCheck {
    bool is_psd = false;
    ExactLdlt factors;
};

PsdCheck exact_psd_check(const GramRational& g);

/// Pivot count above rank_eps * (largest pivot) in the pivoted symmetric
/// factorization at float precision.
std::size_t numerical_rank(const GramNumeric& g, double rank_eps);

/// Drops rows/columns (and their basis monomials) whose largest entry
/// magnitude is below rank_eps; run before recovery.
GramNumeric prune_redundant_monomials(const GramNumeric& g, double rank_eps);

struct RecoverOutcome {
    bool ok = false;
    GramRational gram;          // satisfies the identity exactly when ok
    std::string failure;        // diagnostic when !ok
    Int denom_used = Int(0);
    // Interior-case sufficiency bound lambda > ||G_N||_F^2 kappa2(A)^2 tau^2,
    // evaluated in floating point as a diagnostic only.
    std::optional<bool> interior_bound_holds;
};

/// Interior case: rationalize entries, project exactly onto the matching
/// constraints, verify PSD exactly; escalate the denominator bound on
/// failure. Soundness: ok implies gram_to_poly(gram) == f and exact PSD.
RecoverOutcome interior_recover(const Polynomial& f, const GramNumeric& gn,
                                const LinearSystem& sys, const RecoverConfig& cfg);

/// Boundary case: truncated LDL^T at numerical rank r, simultaneous
/// Diophantine approximation on the retained columns, exact repair of the
/// pivot weights so the identity holds. Fails (honestly) when the identity
/// cannot be met within the rank-r structure or a repaired pivot turns
/// negative.
RecoverOutcome boundary_recover(const Polynomial& f, const GramNumeric& gn,
                                const LinearSystem& sys, const RecoverConfig& cfg);

}  // namespace soscert
