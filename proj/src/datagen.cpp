#include "soscert/datagen.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "soscert/float_linalg.hpp"
#include "soscert/poly_text.hpp"
#include "soscert/problem_io.hpp"

namespace soscert {

namespace {

MonomialBasis cfg_basis(const GenConfig& cfg) {
    return full_basis(cfg.nvars, cfg.half_degree);
}

std::int64_t cfg_mag(const GenConfig& cfg) {
    return std::max<std::int64_t>(1, std::max(std::llabs(cfg.coeff_lo), std::llabs(cfg.coeff_hi)));
}

Rational sample_entry(Rng& rng, const GenConfig& cfg) {
    if (rng.bernoulli(cfg.sparsity)) return Rational(0);
    return Rational(rng.uniform_int(cfg.coeff_lo, cfg.coeff_hi));
}

Rational sample_positive(Rng& rng, const GenConfig& cfg, std::int64_t max_den) {
    return Rational(rng.uniform_int(1, cfg_mag(cfg)), rng.uniform_int(1, max_den));
}

}  // namespace

TrainingPair gen_shift(const GenConfig& cfg) {
    Rng rng(split_seed(cfg.seed, 0x5317f7));
    MonomialBasis basis = cfg_basis(cfg);
    const std::size_t m = basis.size();

    GramRational g = zero_gram(basis);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            Rational v = sample_entry(rng, cfg);
            g.entries[i][j] = v;
            g.entries[j][i] = v;
        }

    double lam = min_eigenvalue_hint(g.entries);
    Int k(static_cast<long long>(std::floor(lam)));
    for (;;) {
        GramRational shifted = g;
        for (std::size_t i = 0; i < m; ++i) shifted.entries[i][i] -= Rational(k);
        ExactLdlt f = exact_ldlt(shifted.entries);
        if (f.psd) {
            TrainingPair p;
            p.method_tag = "shift";
            p.f = gram_to_poly(shifted);
            p.cert = gram_to_certificate(shifted, f);
            return p;
        }
        // the float eigenvalue under-shifted; lower k until the exact check passes
        k -= 1;
    }
}

TrainingPair gen_factored(const GenConfig& cfg) {
    Rng rng(split_seed(cfg.seed, 0xfac7));
    MonomialBasis basis = cfg_basis(cfg);
    const std::size_t m = basis.size();
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, cfg.rank_k)), m);

    // sparse integer rows; resample an all-zero L a bounded number of times
    std::vector<RatVec> rows;
    for (int attempt = 0; attempt < 64; ++attempt) {
        rows.assign(k, RatVec(m, Rational(0)));
        bool any = false;
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < m; ++i) {
                rows[j][i] = sample_entry(rng, cfg);
                if (rows[j][i] != 0) any = true;
            }
        if (any) break;
        if (attempt == 63) throw std::runtime_error("gen_factored: could not sample a nonzero L");
    }

    TrainingPair p;
    p.method_tag = "factored";
    for (std::size_t j = 0; j < k; ++j) {
        bool zero_row = true;
        for (auto& v : rows[j])
            if (v != 0) zero_row = false;
        if (zero_row) continue;
        Rational d = sample_positive(rng, cfg, 4);
        Polynomial q(cfg.nvars);
        for (std::size_t i = 0; i < m; ++i)
            if (rows[j][i] != 0) q.add_term(basis.monomials[i], rows[j][i]);
        p.cert.squares.push_back({d, std::move(q)});
    }
    p.cert.nvars = cfg.nvars;
    p.f = p.cert.squares.empty() ? Polynomial(cfg.nvars) : p.cert.expand();
    return p;
}

TrainingPair gen_opt_shift(const GenConfig& cfg) {
    Rng rng(split_seed(cfg.seed, 0x0b715));
    MonomialBasis basis = cfg_basis(cfg);

    for (int attempt = 0; attempt < 64; ++attempt) {
        // integer polynomial of degree exactly 2d
        MonomialBasis span = full_basis(cfg.nvars, 2 * cfg.half_degree);
        Polynomial f(cfg.nvars);
        for (auto& mon : span.monomials) {
            Rational c = sample_entry(rng, cfg);
            if (c != 0) f.add_term(mon, c);
        }
        if (f.total_degree() != static_cast<std::uint32_t>(2 * cfg.half_degree)) continue;

        LinearSystem sys;
        try {
            sys = matching_system(f, basis);
        } catch (const InexpressibleMonomial&) {
            continue;  // resample
        }
        GramRational g = least_norm_gram(sys, basis);

        double lam = min_eigenvalue_hint(g.entries);
        Int k = lam < 0 ? Int(static_cast<long long>(std::ceil(-lam))) : Int(0);
        for (;;) {
            GramRational shifted = g;
            for (std::size_t i = 0; i < basis.size(); ++i) shifted.entries[i][i] += Rational(k);
            ExactLdlt fac = exact_ldlt(shifted.entries);
            if (fac.psd) {
                TrainingPair p;
                p.method_tag = "opt_shift";
                p.f = gram_to_poly(shifted);  // = f + k * sum of squared basis monomials
                p.cert = gram_to_certificate(shifted, fac);
                return p;
            }
            k += 1;
        }
    }
    throw std::runtime_error("gen_opt_shift: sampling failed to produce a matching system");
}

namespace {

// dd generator set over m coordinates: {e_k} then {e_k + e_l, e_k - e_l}.
struct DdGenerator {
    std::size_t a;
    std::size_t b;    // == a for the singleton e_a
    int sign_b = 1;   // +1 or -1 for two-coordinate generators
};

std::vector<DdGenerator> dd_generators(std::size_t m) {
    std::vector<DdGenerator> gens;
    for (std::size_t a = 0; a < m; ++a) gens.push_back({a, a, 1});
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            gens.push_back({a, b, 1});
            gens.push_back({a, b, -1});
        }
    return gens;
}

TrainingPair gen_dd_impl(const GenConfig& cfg, bool scaled) {
    Rng rng(split_seed(cfg.seed, scaled ? 0x5dd : 0xdd));
    MonomialBasis basis = cfg_basis(cfg);
    const std::size_t m = basis.size();

    RatVec dinv(m, Rational(1));
    TrainingPair p;
    if (scaled) {
        p.sdd_diagonal.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            Rational d = sample_positive(rng, cfg, 2);  // strictly positive diagonal
            p.sdd_diagonal[i] = d;
            dinv[i] = Rational(1) / d;
        }
    }

    p.method_tag = scaled ? "sdd" : "dd";
    p.cert.nvars = cfg.nvars;
    for (auto& gen : dd_generators(m)) {
        if (rng.bernoulli(cfg.sparsity)) continue;
        Rational eta = sample_positive(rng, cfg, 2);
        Polynomial q(cfg.nvars);
        q.add_term(basis.monomials[gen.a], dinv[gen.a]);
        if (gen.b != gen.a) q.add_term(basis.monomials[gen.b], Rational(gen.sign_b) * dinv[gen.b]);
        p.cert.squares.push_back({eta, std::move(q)});
    }
    p.f = p.cert.squares.empty() ? Polynomial(cfg.nvars) : p.cert.expand();
    return p;
}

}  // namespace

TrainingPair gen_dd(const GenConfig& cfg) { return gen_dd_impl(cfg, false); }
TrainingPair gen_sdd(const GenConfig& cfg) { return gen_dd_impl(cfg, true); }

TrainingPair generate(const GenConfig& cfg, const std::string& method) {
    if (method == "shift") return gen_shift(cfg);
    if (method == "factored") return gen_factored(cfg);
    if (method == "opt_shift") return gen_opt_shift(cfg);
    if (method == "dd") return gen_dd(cfg);
    if (method == "sdd") return gen_sdd(cfg);
    throw std::invalid_argument("unknown construction method: " + method);
}

bool is_diagonally_dominant(const RatMat& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        Rational off(0);
        for (std::size_t j = 0; j < g.size(); ++j)
            if (j != i) off += rat_abs(g[i][j]);
        if (g[i][i] < off) return false;
    }
    return true;
}

RatMat decomposition_gram(const TrainingPair& pair, const MonomialBasis& basis) {
    const std::size_t m = basis.size();
    RatMat g = rat_zero_matrix(m, m);
    for (auto& s : pair.cert.squares) {
        RatVec col(m, Rational(0));
        for (auto& [mon, c] : s.square.terms()) {
            auto idx = basis.index_of(mon);
            if (!idx) throw std::invalid_argument("decomposition_gram: square leaves the basis");
            col[*idx] = c;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (col[i] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (col[j] != 0) g[i][j] += s.weight * col[i] * col[j];
        }
    }
    return g;
}

static const char* kMethodCycle[5] = {"shift", "factored", "opt_shift", "dd", "sdd"};

CorpusManifest emit_corpus(const GenConfig& cfg, int count, const std::string& out_dir,
                           const std::string& method) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(out_dir) / "problems");
    fs::create_directories(fs::path(out_dir) / "certs");

    CorpusManifest manifest;
    manifest.entries.resize(static_cast<std::size_t>(count));
    std::vector<TrainingPair> pairs(static_cast<std::size_t>(count));

#ifdef SOSCERT_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < count; ++i) {
        GenConfig draw = cfg;
        draw.seed = split_seed(cfg.seed, static_cast<std::uint64_t>(i));
        pairs[static_cast<std::size_t>(i)] =
            generate(draw, method.empty() ? kMethodCycle[i % 5] : method);
    }

    for (int i = 0; i < count; ++i) {
        const TrainingPair& p = pairs[static_cast<std::size_t>(i)];
        char name[16];
        std::snprintf(name, sizeof(name), "%04d", i);
        fs::path ppath = fs::path(out_dir) / "problems" / (std::string(name) + ".poly");
        fs::path cpath = fs::path(out_dir) / "certs" / (std::string(name) + ".cert");
        write_problem_file(ppath.string(), p.f,
                           {{"nvars", std::to_string(cfg.nvars)}, {"method", p.method_tag}});
        write_certificate_file(cpath.string(), p.cert);
        manifest.entries[static_cast<std::size_t>(i)] = CorpusEntry{
            i, p.method_tag, cfg.nvars, static_cast<int>(p.f.total_degree()),
            static_cast<int>(p.cert.squares.size())};
    }

    std::ofstream mf(fs::path(out_dir) / "manifest.tsv", std::ios::binary);
    if (!mf) throw std::runtime_error("emit_corpus: cannot write manifest");
    mf << manifest_to_string(manifest);
    return manifest;
}

std::string manifest_to_string(const CorpusManifest& m) {
    std::ostringstream os;
    os << "id\tmethod\tnvars\tdegree\tsquares\n";
    for (auto& e : m.entries)
        os << e.id << "\t" << e.method << "\t" << e.nvars << "\t" << e.degree << "\t" << e.squares
           << "\n";
    return os.str();
}

}  // namespace soscert
