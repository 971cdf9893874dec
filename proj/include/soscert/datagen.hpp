#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "soscert/certificate.hpp"
#include "soscert/gram.hpp"
#include "soscert/rng.hpp"

namespace soscert {

/// Knobs for the random Gram-matrix constructions.
struct GenConfig {
    int nvars = 2;
    int half_degree = 1;
    std::int64_t coeff_lo = -9;
    std::int64_t coeff_hi = 9;
    double sparsity = 0.6;   // probability a sampled entry is zero
    int rank_k = 2;          // number of squares for the factored form
    std::uint64_t seed = 0;
};

/// One synthesized (nonnegative polynomial, exact decomposition) pair.
/// Invariant: cert.expand() == f exactly and all weights are >= 0.
struct TrainingPair {
    Polynomial f;
    SosCertificate cert;
    std::string method_tag;  // shift | factored | opt_shift | dd | sdd
    RatVec sdd_diagonal;     // the congruence diagonal, sdd method only
};

/// Spectral shift: sample symmetric integer G, subtract floor(lambda_min)*I.
/// The float eigenvalue is a hint; the exact PSD check is authoritative and
/// the shift is lowered until it passes.
TrainingPair gen_shift(const GenConfig& cfg);

/// Factored form: G = sum_j d_j row_j^T row_j from a sparse integer matrix L
/// (rank_k rows over the basis) and positive rational diagonal D. The
/// decomposition is read off the rows, no factorization involved.
TrainingPair gen_factored(const GenConfig& cfg);

/// Feasible-point shift: sample an integer polynomial f of degree 2d, take
/// the minimum-Frobenius-norm Gram solution of the matching system, then add
/// k*I with the smallest integer k >= 0 making it exactly PSD. The returned
/// polynomial is f + k * sum of squared basis monomials.
TrainingPair gen_opt_shift(const GenConfig& cfg);

/// Diagonally dominant construction: nonnegative combination of the rank-one
/// generators u u^T, u in {e_k} union {e_k +- e_l}. Each square has at most
/// two monomials and the assembled Gram matrix is diagonally dominant.
TrainingPair gen_dd(const GenConfig& cfg);

/// Scaled-dd construction: generators D^-1 u for a positive diagonal D.
TrainingPair gen_sdd(const GenConfig& cfg);

TrainingPair generate(const GenConfig& cfg, const std::string& method);

/// Diagonal dominance G_ii >= sum_{j != i} |G_ij|, checked exactly.
bool is_diagonally_dominant(const RatMat& g);

/// Gram matrix of a training pair's decomposition, assembled exactly over
/// the given basis (used by tests to re-check dd/sdd structure).
RatMat decomposition_gram(const TrainingPair& pair, const MonomialBasis& basis);

struct CorpusEntry {
    int id;
    std::string method;
    int nvars;
    int degree;
    int squares;
};

struct CorpusManifest {
    std::vector<CorpusEntry> entries;
};

/// Writes problems/NNNN.poly, certs/NNNN.cert and manifest.tsv under out_dir.
/// Methods rotate per draw unless one is named; byte-identical reruns under
/// a fixed seed.
CorpusManifest emit_corpus(const GenConfig& cfg, int count, const std::string& out_dir,
                           const std::string& method = "");

std::string manifest_to_string(const CorpusManifest& m);

}  // namespace soscert
