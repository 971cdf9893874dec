#pragma once

#include <optional>
#include <vector>

#include "soscert/polynomial.hpp"

namespace soscert {

/// Ordered monomial vector v(x). Monomials are kept in degree-ascending
/// graded-lex order (1, x1, x2, x1^2, x1*x2, ...), no duplicates.
struct MonomialBasis {
    int nvars = 0;
    std::vector<Monomial> monomials;

    std::size_t size() const { return monomials.size(); }

    std::optional<std::size_t> index_of(const Monomial& m) const {
        for (std::size_t i = 0; i < monomials.size(); ++i)
            if (monomials[i] == m) return i;
        return std::nullopt;
    }
};

/// C(n+d, d) as a sanity bound for basis construction.
unsigned long long binomial(unsigned n, unsigned k);

/// All monomials of degree <= half_degree in nvars variables.
/// Throws if the basis would exceed size_cap.
MonomialBasis full_basis(int nvars, int half_degree, std::size_t size_cap = 100000);

/// Sparse basis for a target polynomial: monomials beta with
///   ceil(min_v/2) <= beta_v <= ceil(max_v/2)   (per-variable box over f's support)
///   ceil(mindeg(f)/2) <= deg(beta) <= deg(f)/2
/// A coordinate-box over-approximation of the half Newton polytope.
/// Requires deg(f) even; the zero polynomial yields an empty basis.
MonomialBasis support_restricted_basis(const Polynomial& f);

/// Union of two bases over the same variable set, in basis order.
MonomialBasis merge_bases(const MonomialBasis& a, const std::vector<Monomial>& extra);

}  // namespace soscert
