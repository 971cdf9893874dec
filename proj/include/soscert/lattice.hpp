#pragma once

#include <vector>

#include "soscert/bigfloat.hpp"
#include "soscert/rational.hpp"

namespace soscert {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

/// LLL lattice basis reduction over the rows of B, exact rational
/// Gram-Schmidt bookkeeping throughout. Requires linearly independent rows
/// and 1/4 < delta <= 1. The result is size-reduced and satisfies the
/// Lovasz condition for the given delta.
IntMat lll_reduce(IntMat B, const Rational& delta = Rational(3, 4));

/// Post-hoc exact verification used by tests: size reduction |mu_ij| <= 1/2
/// and the Lovasz condition with the given delta.
bool is_lll_reduced(const IntMat& B, const Rational& delta);

/// Best rational approximation of x with denominator <= denom_bound, by
/// continued-fraction convergents. Satisfies |x - p/q| <= 1/(q*denom_bound);
/// exact inputs with small denominators round-trip unchanged.
Rational rationalize(const Rational& x, const Int& denom_bound);
Rational rationalize(const BigFloat& x, const Int& denom_bound);

/// Simultaneous Diophantine approximation: one denominator q <= Q with
/// max_i |q v_i - p_i| as small as the LLL-derived candidate set allows.
/// n = 1 falls back to continued fractions (exact optimum).
struct DiophantineResult {
    Int q;
    IntVec p;
    Rational max_error;  // max_i |q v_i - p_i|, exact
};

DiophantineResult simultaneous_diophantine(const std::vector<Rational>& v, const Int& Q,
                                           const Rational& lll_delta = Rational(3, 4));

}  // namespace soscert
