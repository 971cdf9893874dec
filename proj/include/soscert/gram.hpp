#pragma once

#include <map>
#include <vector>

#include "soscert/basis.hpp"
#include "soscert/exact_linalg.hpp"
#include "soscert/polynomial.hpp"

namespace soscert {

using FloatVec = std::vector<BigFloat>;
using FloatMat = std::vector<FloatVec>;

/// Symmetric Gram matrix with exact rational entries over a monomial basis.
struct GramRational {
    MonomialBasis basis;
    RatMat entries;  // dense symmetric, mirrored on write

    std::size_t dim() const { return basis.size(); }
};

/// Symmetric Gram matrix with arbitrary-precision float entries.
struct GramNumeric {
    MonomialBasis basis;
    FloatMat entries;

    std::size_t dim() const { return basis.size(); }
};

GramRational zero_gram(const MonomialBasis& basis);

/// v(x)^T G v(x), expanded exactly.
Polynomial gram_to_poly(const GramRational& g);
/// Float expansion at the entries' own precision.
FloatPolynomial gram_to_poly(const GramNumeric& g);

GramNumeric to_numeric(const GramRational& g, unsigned prec_bits);
GramRational to_rational_entries(const GramNumeric& g);

/// Raised when a monomial of f is not a product of two basis monomials.
class InexpressibleMonomial : public std::runtime_error {
  public:
    InexpressibleMonomial(const Monomial& m, const std::string& text)
        : std::runtime_error("monomial not expressible over basis: " + text), monomial(m) {}
    Monomial monomial;
};

/// Coefficient-matching system A y = b between f and v(x)^T G v(x).
///
/// Unknowns are the upper-triangle entries (i, j), i <= j, of G. One row per
/// monomial in the union of f's support and the support of the v v^T
/// expansion. Rows are stored sparsely; each unknown occurs in exactly one
/// row (a Gram entry contributes to a single product monomial), which makes
/// the rows pairwise orthogonal.
struct LinearSystem {
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;  // (i, j), i <= j
    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
    RatVec rhs;
    std::vector<Monomial> target_monomials;
    std::size_t gram_dim = 0;

    std::size_t unknown_index(std::size_t i, std::size_t j) const;
};

LinearSystem matching_system(const Polynomial& f, const MonomialBasis& basis);

/// Exact Frobenius-norm projection of G0 onto the affine set {A vec(G) = b}:
/// argmin ||G0 - G||_F subject to the matching constraints. The off-diagonal
/// unknowns carry weight 2 in the Frobenius inner product. The result
/// satisfies every constraint exactly; projecting twice equals projecting
/// once. Dependent rows (possible only through duplicated constraints) are
/// dropped; an inconsistent dependent row throws.
GramRational project_onto_affine(const GramRational& g0, const LinearSystem& sys);

/// Minimum-Frobenius-norm solution of the matching system (= projection of 0).
GramRational least_norm_gram(const LinearSystem& sys, const MonomialBasis& basis);

/// Checks A vec(G) = b exactly.
bool satisfies_system(const GramRational& g, const LinearSystem& sys);

}  // namespace soscert
