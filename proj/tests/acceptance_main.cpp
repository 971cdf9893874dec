// Acceptance gate: one criterion per function, one PASS/FAIL line each.
// Exit code 0 iff every criterion holds (the optional Lean-toolchain
// criterion reports SKIP and does not fail the gate when no checker is
// installed).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "soscert/datagen.hpp"
#include "soscert/float_linalg.hpp"
#include "soscert/lean_emit.hpp"
#include "soscert/pipeline.hpp"
#include "soscert/poly_text.hpp"
#include "soscert/problem_io.hpp"
#include "soscert/reward.hpp"
#include "test_util.hpp"

using namespace soscert;
using namespace soscert::testutil;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = std::string(SOSCERT_TEST_DIR) + "/fixtures/";
const std::string kGolden = std::string(SOSCERT_TEST_DIR) + "/golden/";

// Regression bars pinned from the measurement runs on the fixed seeds below
// (both comfortably above the required floors of 90% and 70%).
constexpr int kRefineInstances = 200;
constexpr int kRefineBar = 200;        // measured 200/200
constexpr int kEndToEndProblems = 100;
constexpr int kEndToEndBar = 100;      // measured 100/100, floor is 70

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

Polynomial quartic_example() {
    return parse_polynomial("2*x1^4 + 2*x1^3*x2 - x1^2*x2^2 + 5*x2^4", 2);
}

// ---------------------------------------------------------------- criterion 1
bool criterion1() {
    Timer timer;
    fs::path out = fs::temp_directory_path() / "soscert_acc1";
    fs::remove_all(out);

    ProblemFile pf = read_problem_file(kFixtures + "quartic_2var.poly");
    ReplaySource src(kFixtures + "quartic_2var.replay");
    PipelineConfig cfg;
    cfg.out_dir = out.string();
    PipelineReport r = solve(pf.f, "quartic_2var", src, cfg);
    if (r.outcome != Outcome::proved) return false;

    SosCertificate cert = read_certificate_file(r.certificate_path);
    Verdict v = check_certificate(pf.f, cert);
    if (!v.ok || !v.identity_residual.is_zero()) return false;

    // Gram constraints over the basis [x1^2, x2^2, x1x2], exactly
    MonomialBasis b;
    b.nvars = 2;
    b.monomials = {mono({2, 0}), mono({0, 2}), mono({1, 1})};
    TrainingPair tp;
    tp.f = pf.f;
    tp.cert = cert;
    RatMat g = decomposition_gram(tp, b);
    bool constraints = g[0][0] == 2 && g[1][1] == 5 && g[2][2] + 2 * g[0][1] == -1 &&
                       2 * g[0][2] == 2 && 2 * g[1][2] == 0;
    if (!constraints) return false;

    // structural match against the frozen template instantiation
    std::string script = slurp(r.lean_path);
    for (auto* landmark :
         {"import Mathlib", "let terms : List (Real × Real) :=",
          "(terms.map (fun (p, k) => p * k^2)).sum", "linear_combination h1", "rw [this]",
          "positivity", "simp only [List.map_cons, List.map_nil, List.sum_cons, List.sum_nil,"}) {
        if (script.find(landmark) == std::string::npos) return false;
    }
    fs::remove_all(out);
    return timer.seconds() < 1.0;
}

// ---------------------------------------------------------------- criterion 2
bool criterion2() {
    Timer timer;
    const char* methods[5] = {"shift", "factored", "opt_shift", "dd", "sdd"};
    for (auto* method : methods) {
        for (int i = 0; i < 100; ++i) {
            GenConfig cfg;
            cfg.nvars = 1 + i % 4;
            cfg.half_degree = 1 + (i / 4) % 3;
            cfg.seed = 424200 + static_cast<std::uint64_t>(i);
            cfg.rank_k = 1 + i % 3;
            TrainingPair p = generate(cfg, method);
            Verdict v = check_certificate(p.f, p.cert);
            if (!v.ok) {
                std::printf("    [criterion2] %s draw %d failed verification\n", method, i);
                return false;
            }
            for (auto& s : p.cert.squares)
                if (s.weight < 0) return false;
        }
    }
    double t = timer.seconds();
    std::printf("    [criterion2] 500 draws verified in %.1f s\n", t);
    return t < 60.0;
}

// ---------------------------------------------------------------- criterion 3
bool criterion3() {
    int converged = 0, total = 0, monotonicity_violations = 0;
    Rng noise_rng(20250810);
    for (int i = 0; total < kRefineInstances; ++i) {
        GenConfig g;
        g.nvars = 1 + i % 3;
        g.half_degree = 1 + (i / 3) % 2;
        g.seed = 777000 + static_cast<std::uint64_t>(i);
        g.sparsity = 0.4;
        g.rank_k = 1 + i % 3;
        TrainingPair pair = gen_factored(g);
        if (pair.cert.squares.empty() || pair.f.is_zero()) continue;
        ++total;

        MonomialBasis basis;
        basis.nvars = g.nvars;
        std::set<Monomial, BasisOrder> mons;
        for (auto& s : pair.cert.squares)
            for (auto& [m, c] : s.square.terms()) mons.insert(m);
        basis.monomials.assign(mons.begin(), mons.end());

        std::vector<WeightedSquare> ws;
        for (auto& s : pair.cert.squares)
            ws.push_back({s.weight, to_float_polynomial(s.square, 256)});
        FactorMatrix L = initial_factor(ws, basis, 256);
        for (auto& col : L.columns)
            for (auto& x : col) x += BigFloat((noise_rng.uniform01() * 2 - 1) * 1e-3, 256);

        RefineConfig cfg;  // tau 1e-15, 50 iterations, 256 bits
        RefineOutcome out = gauss_newton(pair.f, L, cfg);
        if (out.converged && out.theta_final < 1e-15 && out.iterations <= 50) ++converged;
        for (std::size_t k = 1; k < out.theta_trace.size(); ++k)
            if (out.theta_trace[k] > out.theta_trace[k - 1]) ++monotonicity_violations;
    }
    std::printf("    [criterion3] converged %d/%d (bar %d), monotonicity violations %d\n",
                converged, total, kRefineBar, monotonicity_violations);
    return converged >= kRefineBar && converged * 10 >= total * 9 &&
           monotonicity_violations == 0;
}

// ---------------------------------------------------------------- criterion 4
bool criterion4() {
    fs::path corpus = fs::temp_directory_path() / "soscert_acc4_corpus";
    fs::path out = fs::temp_directory_path() / "soscert_acc4_out";
    fs::remove_all(corpus);
    fs::remove_all(out);
    fs::create_directories(corpus);

    // 100 generated SOS problems, nvars <= 4, methods rotating
    std::vector<Polynomial> problems;
    const char* methods[5] = {"shift", "factored", "opt_shift", "dd", "sdd"};
    for (int i = 0; static_cast<int>(problems.size()) < kEndToEndProblems; ++i) {
        GenConfig g;
        g.nvars = 1 + i % 4;
        g.half_degree = g.nvars <= 2 ? 1 + (i / 4) % 2 : 1;
        g.seed = 31337 + static_cast<std::uint64_t>(i);
        g.sparsity = 0.6;
        g.rank_k = 1 + i % 2;
        TrainingPair p = generate(g, methods[i % 5]);
        if (p.f.is_zero()) continue;
        problems.push_back(p.f);
    }

    int proved = 0, reverified = 0, within_time = 0;
    for (std::size_t i = 0; i < problems.size(); ++i) {
        BaselineConfig bc;
        bc.restarts = 32;
        bc.seed = 555 + i;
        BaselineSource src(bc);
        PipelineConfig cfg;
        cfg.budget_k = 32;
        cfg.timeout_s = 10.0;
        cfg.out_dir = out.string();
        std::string id = "p" + std::to_string(i);
        Timer per;
        PipelineReport r = solve(problems[i], id, src, cfg);
        double t = per.seconds();
        if (r.outcome == Outcome::proved) {
            ++proved;
            if (t < 10.0) ++within_time;
            SosCertificate cert = read_certificate_file(r.certificate_path);
            if (check_certificate(problems[i], cert).ok) ++reverified;
        }
    }
    std::printf("    [criterion4] proved %d/%zu within 10 s: %d, re-verified %d (bar %d)\n",
                proved, problems.size(), within_time, reverified, kEndToEndBar);
    fs::remove_all(corpus);
    fs::remove_all(out);
    return within_time >= kEndToEndBar && proved * 10 >= static_cast<int>(problems.size()) * 7 &&
           reverified == proved;
}

// ---------------------------------------------------------------- criterion 5
bool criterion5() {
    Rng rng(9091);
    int disagreements = 0, checked = 0;
    for (int round = 0; round < 1000; ++round) {
        MonomialBasis b = full_basis(1, 4);
        GramRational g = zero_gram(b);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i; j < 5; ++j) {
                Rational v(rng.uniform_int(-8, 8), rng.uniform_int(1, 5));
                g.entries[i][j] = v;
                g.entries[j][i] = v;
            }
        bool exact = exact_psd_check(g).is_psd;
        double lam = min_eigenvalue_hint(g.entries);
        if (std::abs(lam) > 1e-6) {
            ++checked;
            if (exact != (lam > 0)) ++disagreements;
        }
    }
    std::printf("    [criterion5] %d matrices off the margin, %d disagreements\n", checked,
                disagreements);
    return disagreements == 0 && checked > 900;
}

// ---------------------------------------------------------------- criterion 6
bool criterion6() {
    Rng rng(4321);
    auto int_distance = [](const Rational& x) {
        Int fl = rat_floor(x);
        Rational lo = x - Rational(fl);
        Rational hi = Rational(fl + 1) - x;
        return lo < hi ? lo : hi;
    };
    int matched = 0;
    for (int round = 0; round < 500; ++round) {
        std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 3));
        long Q = rng.uniform_int(2, 200);
        std::vector<Rational> v;
        for (std::size_t j = 0; j < n; ++j)
            v.push_back(Rational(rng.uniform_int(0, 999983), 999979));
        DiophantineResult d = simultaneous_diophantine(v, Int(Q));
        Rational best(-1);
        for (long q = 1; q <= Q; ++q) {
            Rational worst(0);
            for (auto& vi : v) {
                Rational e = int_distance(Rational(q) * vi);
                if (e > worst) worst = e;
            }
            if (best < 0 || worst < best) best = worst;
        }
        if (d.max_error == best) ++matched;
    }
    std::printf("    [criterion6] brute-force optimum matched on %d/500\n", matched);
    return matched == 500;
}

// ---------------------------------------------------------------- criterion 7
bool criterion7() {
    RewardConfig cfg;  // alpha 0.5, w_acc 0.9, lambda 0.5, c_hard 0.5
    Polynomial f = parse_polynomial("x1^2 + 2*x1 + 1", 1);
    RewardBreakdown perfect = total_reward(f, "<SOS Expression>: (x1 + 1)^2", cfg);
    if (perfect.total != 1.0) return false;

    // SDR hand example: 4 required, 1 missing, 1 spurious -> 0.5
    Polynomial f4 = parse_polynomial("x1^2 + x1*x2 + x2^2 + 1", 2);
    FloatPolynomial hat = to_float_polynomial(
        parse_polynomial("x1^2 + x1*x2 + x2^2 + x1", 2), 128);
    if (sdr(f4, hat, cfg.tau_coeff) != 0.5) return false;

    Rng rng(888);
    for (int round = 0; round < 10000; ++round) {
        Polynomial target = random_polynomial(rng, 2, 2, 4);
        if (target.is_zero()) continue;
        Polynomial q = random_polynomial(rng, 2, 1, 3);
        std::string text = "<SOS Expression>: (" + print_polynomial(q) + ")^2";
        RewardBreakdown b = total_reward(target, text, cfg);
        double recomposed = cfg.w_acc * b.r_acc + cfg.w_fmt * b.r_fmt - (b.p_soft + b.p_hard);
        if (b.total != recomposed) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8
bool criterion8() {
    Timer timer;
    fs::path out = fs::temp_directory_path() / "soscert_acc8";
    fs::remove_all(out);
    ProblemFile pf = read_problem_file(kFixtures + "robinson.poly");

    PipelineConfig cfg;
    cfg.budget_k = 32;
    cfg.timeout_s = 25.0;
    cfg.out_dir = out.string();

    BaselineConfig bc;
    bc.restarts = 16;
    bc.seed = 666;
    BaselineSource baseline(bc);
    PipelineReport r1 = solve(pf.f, "robinson", baseline, cfg);
    if (r1.outcome == Outcome::proved) return false;

    fs::path replay = out / "replay.txt";
    fs::create_directories(out);
    {
        std::ofstream os(replay);
        os << "(x1^3 - x1*x2*x3)^2 + (x2^3 - x1*x2*x3)^2 + (x3^3 - x1*x2*x3)^2\n";
        os << "(x1^3)^2 + (x2^3)^2 + (x3^3)^2\n";
        os << "0.5*(x1^3 + x2^3 + x3^3 - 3*x1*x2*x3)^2\n";
    }
    ReplaySource rsrc(replay.string());
    cfg.timeout_s = 25.0;
    PipelineReport r2 = solve(pf.f, "robinson", rsrc, cfg);
    if (r2.outcome == Outcome::proved) return false;

    // audit: any certificate file that appeared must fail verification
    if (fs::exists(out))
        for (auto& e : fs::directory_iterator(out))
            if (e.path().extension() == ".cert") {
                SosCertificate cert = read_certificate_file(e.path().string());
                if (check_certificate(pf.f, cert).ok) return false;
            }
    fs::remove_all(out);
    std::printf("    [criterion8] no proof claimed in %.1f s\n", timer.seconds());
    return timer.seconds() < 60.0;
}

// ---------------------------------------------------------------- criterion 9
bool criterion9() {
    fs::path corpus = fs::temp_directory_path() / "soscert_acc9_corpus";
    fs::path o1 = fs::temp_directory_path() / "soscert_acc9_r1";
    fs::path o2 = fs::temp_directory_path() / "soscert_acc9_r2";
    fs::remove_all(corpus);
    fs::remove_all(o1);
    fs::remove_all(o2);

    GenConfig g;
    g.nvars = 2;
    g.half_degree = 1;
    g.seed = 2024;
    emit_corpus(g, 10, corpus.string());

    auto run = [&](const fs::path& out) {
        BaselineConfig bc;
        bc.restarts = 12;
        bc.seed = 42;
        BaselineSource src(bc);
        PipelineConfig cfg;
        cfg.budget_k = 12;
        cfg.timeout_s = 30.0;
        cfg.out_dir = (out / "artifacts").string();
        return bench((corpus / "problems").string(), (out / "report.tsv").string(), src, cfg);
    };
    BenchSummary s1 = run(o1);
    BenchSummary s2 = run(o2);
    bool same = slurp((o1 / "report.tsv").string()) == slurp((o2 / "report.tsv").string());
    bool nonempty = !s1.report_tsv.empty();
    bool audited = s1.audit_ok && s2.audit_ok;
    fs::remove_all(corpus);
    fs::remove_all(o1);
    fs::remove_all(o2);
    return same && nonempty && audited;
}

// --------------------------------------------------------------- criterion 10
// Optional: requires an installed Lean toolchain. The checker command is
// taken from SOSCERT_LEAN_CHECK (whitespace-separated), e.g.
// "lake env lean". Returns +1 pass, 0 skip, -1 fail.
int criterion10() {
    const char* cmd = std::getenv("SOSCERT_LEAN_CHECK");
    if (!cmd || !*cmd) return 0;

    LeanEmitConfig cfg;
    cfg.theorem_name = "quartic_2var_nonneg";
    std::istringstream split(cmd);
    for (std::string tok; split >> tok;) cfg.lean_check_command.push_back(tok);

    std::string script = slurp(kGolden + "quartic_2var.lean");
    LeanCheckResult good = lean_check(script, cfg);
    if (good.status == LeanCheckStatus::skipped) return 0;
    if (good.status != LeanCheckStatus::pass) return -1;

    // corrupt one coefficient: the checker must reject it
    std::string bad = script;
    auto pos = bad.find("5*x2^4");
    if (pos == std::string::npos) return -1;
    bad.replace(pos, 6, "6*x2^4");
    LeanCheckResult broken = lean_check(bad, cfg);
    return broken.status == LeanCheckStatus::fail ? 1 : -1;
}

}  // namespace

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    struct Entry {
        int id;
        const char* name;
        bool (*fn)();
    };
    Entry entries[] = {
        {1, "worked-example golden (replay pipeline, exact Gram constraints, < 1 s)", criterion1},
        {2, "round-trip soundness (500 generated pairs verify exactly, < 60 s)", criterion2},
        {3, "refinement reaches 1e-15 from 1e-3 noise, theta never increases", criterion3},
        {4, "end-to-end recovery with the baseline conjecturer (10 s budget)", criterion4},
        {5, "exact PSD check vs float eigenvalue oracle (1000 x 5x5)", criterion5},
        {6, "simultaneous Diophantine matches brute force (500 inputs)", criterion6},
        {7, "reward arithmetic at the default weights", criterion7},
        {8, "negative control: Robinson polynomial never proves", criterion8},
        {9, "bench determinism: byte-identical reports", criterion9},
    };
    bool all_ok = true;
    for (auto& e : entries) {
        if (only && e.id != only) continue;
        bool ok = e.fn();
        std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", e.id, e.name);
        all_ok = all_ok && ok;
    }
    if (!only || only == 10) {
        int lean = criterion10();
        std::printf("%s criterion 10: emitted script compiles under an installed Lean toolchain\n",
                    lean > 0 ? "PASS" : (lean == 0 ? "SKIP" : "FAIL"));
        all_ok = all_ok && lean >= 0;
    }
    return all_ok ? 0 : 1;
}
