#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "soscert/gram.hpp"
#include "soscert/polynomial.hpp"

namespace soscert {

/// The proof object: f = sum_i weight_i * q_i^2 with weight_i >= 0 exact.
struct SosCertificate {
    int nvars = 0;
    std::vector<WeightedSquareExact> squares;

    Polynomial expand() const { return squares.empty() ? Polynomial(nvars) : expand_weighted_squares(squares); }
};

/// Outcome of the exact check. ok iff the identity residual is the zero
/// polynomial and no weight is negative.
struct Verdict {
    bool ok = false;
    Polynomial identity_residual;
    std::vector<std::size_t> weight_violations;  // indices of negative weights
};

/// Expands sum_i k_i q_i^2 exactly and compares to f term by term.
/// Every failure is a verdict, never an exception.
Verdict check_certificate(const Polynomial& f, const SosCertificate& cert);

/// Certificate from an exact-PSD Gram matrix via exact LDL^T: weights are the
/// positive pivots, squares come from the rows of L^T over the permuted
/// basis. Zero pivots are dropped. Throws if the PSD check fails.
SosCertificate gram_to_certificate(const GramRational& g);
/// Same, reusing an already-computed factorization of g.
SosCertificate gram_to_certificate(const GramRational& g, const ExactLdlt& f);

/// Certificate file format: header "nvars k", then one line per square:
/// "num/den<TAB>polynomial-text".
std::string certificate_to_string(const SosCertificate& cert);
SosCertificate parse_certificate(const std::string& text);
void write_certificate_file(const std::string& path, const SosCertificate& cert);
SosCertificate read_certificate_file(const std::string& path);

}  // namespace soscert
