#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "soscert/datagen.hpp"
#include "soscert/lean_emit.hpp"
#include "soscert/pipeline.hpp"
#include "soscert/problem_io.hpp"
#include "soscert/reward.hpp"

using namespace soscert;

namespace {

// exit codes: 0 success / proved, 2 unproved or failed check, 1 usage/error
constexpr int kExitOk = 0;
constexpr int kExitUnproved = 2;

struct CommonOptions {
    std::string source = "baseline";
    std::string replay_file;
    std::string http_url;
    std::string http_model = "conjecturer";
    double http_temperature = 0.8;
    int budget = 32;
    double timeout = 3600.0;
    std::uint64_t seed = 0;
    unsigned precision_bits = 256;
    double tol_tau = 1e-15;
    double rank_eps = 1e-8;
    long long denom_bound = 1000000;
    std::string out_dir = "out";
    int parallelism = 1;
    int restarts = 20;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--source", opt.source, "conjecture source: replay|baseline|http")
        ->check(CLI::IsMember({"replay", "baseline", "http"}));
    cmd->add_option("--replay-file", opt.replay_file, "SOS expressions, one per line");
    cmd->add_option("--http-url", opt.http_url, "conjecture endpoint URL");
    cmd->add_option("--http-model", opt.http_model, "model identifier sent to the endpoint");
    cmd->add_option("--http-temperature", opt.http_temperature);
    cmd->add_option("--budget", opt.budget, "candidate budget per problem");
    cmd->add_option("--timeout", opt.timeout, "per-problem time limit in seconds");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--precision-bits", opt.precision_bits, "refinement working precision");
    cmd->add_option("--tol", opt.tol_tau, "refinement tolerance tau");
    cmd->add_option("--rank-eps", opt.rank_eps, "numerical rank threshold");
    cmd->add_option("--denom-bound", opt.denom_bound, "rationalization denominator cap");
    cmd->add_option("--out-dir", opt.out_dir, "directory for certificates and Lean scripts");
    cmd->add_option("--parallelism", opt.parallelism, "concurrent problems in bench");
    cmd->add_option("--restarts", opt.restarts, "baseline conjecturer restarts");
}

PipelineConfig make_config(const CommonOptions& opt) {
    PipelineConfig cfg;
    cfg.budget_k = opt.budget;
    cfg.timeout_s = opt.timeout;
    cfg.refine.precision_bits = opt.precision_bits;
    cfg.refine.tol_tau = opt.tol_tau;
    cfg.recover.rank_eps = opt.rank_eps;
    cfg.recover.denom_bound = Int(opt.denom_bound);
    cfg.parallelism = opt.parallelism;
    cfg.seed = opt.seed;
    cfg.out_dir = opt.out_dir;
    return cfg;
}

std::unique_ptr<ConjectureSource> make_source(const CommonOptions& opt) {
    if (opt.source == "replay") {
        if (opt.replay_file.empty())
            throw CLI::ValidationError("--replay-file is required with --source replay");
        return std::make_unique<ReplaySource>(opt.replay_file);
    }
    if (opt.source == "http") {
        if (opt.http_url.empty())
            throw CLI::ValidationError("--http-url is required with --source http");
        HttpSourceConfig hc;
        hc.url = opt.http_url;
        hc.model = opt.http_model;
        hc.temperature = opt.http_temperature;
        return std::make_unique<HttpSource>(hc);
    }
    BaselineConfig bc;
    bc.seed = opt.seed + 1;
    bc.restarts = opt.restarts;
    return std::make_unique<BaselineSource>(bc);
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact sum-of-squares certificate toolkit"};
    app.set_config("--config", "", "key=value configuration file");
    app.require_subcommand(1);

    CommonOptions opt;

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "prove one polynomial nonnegative");
    std::string solve_problem;
    solve_cmd->add_option("problem", solve_problem, "problem file (.poly)")->required();
    add_common(solve_cmd, opt);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run a directory of problems");
    std::string bench_dir, bench_report;
    bench_cmd->add_option("dir", bench_dir, "directory of .poly files")->required();
    bench_cmd->add_option("--report", bench_report, "TSV report path");
    add_common(bench_cmd, opt);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "emit a training corpus");
    GenConfig gen_cfg;
    int gen_count = 10;
    std::string gen_out = "corpus", gen_method = "all";
    long long coeff_lo = -9, coeff_hi = 9;
    gen_cmd->add_option("--out", gen_out, "output directory")->required();
    gen_cmd->add_option("--count", gen_count, "number of pairs");
    gen_cmd->add_option("--nvars", gen_cfg.nvars);
    gen_cmd->add_option("--half-degree", gen_cfg.half_degree);
    gen_cmd->add_option("--sparsity", gen_cfg.sparsity);
    gen_cmd->add_option("--rank-k", gen_cfg.rank_k);
    gen_cmd->add_option("--coeff-lo", coeff_lo);
    gen_cmd->add_option("--coeff-hi", coeff_hi);
    gen_cmd->add_option("--seed", gen_cfg.seed);
    gen_cmd->add_option("--method", gen_method,
                        "all|shift|factored|opt_shift|dd|sdd (all = rotate)")
        ->check(CLI::IsMember({"all", "shift", "factored", "opt_shift", "dd", "sdd"}));

    // score
    auto* score_cmd = app.add_subcommand("score", "reward a response file against a problem");
    std::string score_problem, score_response;
    RewardConfig reward_cfg;
    score_cmd->add_option("problem", score_problem)->required();
    score_cmd->add_option("response", score_response)->required();
    score_cmd->add_option("--alpha", reward_cfg.alpha);
    score_cmd->add_option("--w-acc", reward_cfg.w_acc);
    score_cmd->add_option("--lambda", reward_cfg.lambda_soft);
    score_cmd->add_option("--rho-max", reward_cfg.rho_max);
    score_cmd->add_option("--c-hard", reward_cfg.c_hard);
    score_cmd->add_option("--tau-coeff", reward_cfg.tau_coeff);

    // emit-lean
    auto* lean_cmd = app.add_subcommand("emit-lean", "emit a Lean script from a certificate");
    std::string lean_problem, lean_cert, lean_out, lean_theorem = "poly_nonneg";
    lean_cmd->add_option("problem", lean_problem)->required();
    lean_cmd->add_option("certificate", lean_cert)->required();
    lean_cmd->add_option("-o,--output", lean_out, "output path (default stdout)");
    lean_cmd->add_option("--theorem-name", lean_theorem);

    // check-cert
    auto* check_cmd = app.add_subcommand("check-cert", "verify a certificate exactly");
    std::string check_problem, check_cert;
    check_cmd->add_option("problem", check_problem)->required();
    check_cmd->add_option("certificate", check_cert)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) {
            ProblemFile pf = read_problem_file(solve_problem);
            auto source = make_source(opt);
            PipelineConfig cfg = make_config(opt);
            PipelineReport r =
                solve(pf.f, std::filesystem::path(solve_problem).stem().string(), *source, cfg);
            std::printf("outcome: %s\n", to_string(r.outcome));
            if (r.outcome == Outcome::proved) {
                std::printf("theta: %.3e\ncertificate: %s\nlean: %s (%s)\n", r.winning_theta,
                            r.certificate_path.c_str(), r.lean_path.c_str(),
                            to_string(r.lean_status));
            } else if (!r.detail.empty()) {
                std::printf("detail: %s\n", r.detail.c_str());
            }
            std::printf("t(s): %.3f\n", r.total_s);
            return r.outcome == Outcome::proved ? kExitOk : kExitUnproved;
        }
        if (*bench_cmd) {
            auto source = make_source(opt);
            PipelineConfig cfg = make_config(opt);
            BenchSummary s = bench(bench_dir, bench_report, *source, cfg);
            std::fputs(s.human_summary.c_str(), stdout);
            if (!s.audit_ok) {
                std::fputs("soundness audit FAILED\n", stderr);
                return 1;
            }
            return kExitOk;
        }
        if (*gen_cmd) {
            gen_cfg.coeff_lo = coeff_lo;
            gen_cfg.coeff_hi = coeff_hi;
            CorpusManifest m =
                emit_corpus(gen_cfg, gen_count, gen_out, gen_method == "all" ? "" : gen_method);
            std::printf("wrote %zu pairs under %s\n", m.entries.size(), gen_out.c_str());
            return kExitOk;
        }
        if (*score_cmd) {
            ProblemFile pf = read_problem_file(score_problem);
            RewardBreakdown b = total_reward(pf.f, slurp(score_response), reward_cfg);
            std::printf("r_acc: %.6f\nr_fmt: %.0f\nsdr: %.6f\np_soft: %.6f\np_hard: %.6f\n"
                        "total: %.6f\n",
                        b.r_acc, b.r_fmt, b.sdr, b.p_soft, b.p_hard, b.total);
            return kExitOk;
        }
        if (*lean_cmd) {
            ProblemFile pf = read_problem_file(lean_problem);
            SosCertificate cert = read_certificate_file(lean_cert);
            LeanEmitConfig cfg;
            cfg.theorem_name = lean_theorem;
            std::string script = emit_lean(pf.f, cert, cfg);
            if (lean_out.empty()) {
                std::fputs(script.c_str(), stdout);
            } else {
                std::ofstream os(lean_out, std::ios::binary);
                os << script;
            }
            return kExitOk;
        }
        if (*check_cmd) {
            ProblemFile pf = read_problem_file(check_problem);
            SosCertificate cert = read_certificate_file(check_cert);
            Verdict v = check_certificate(pf.f, cert);
            if (v.ok) {
                std::puts("certificate ok");
                return kExitOk;
            }
            std::puts("certificate REJECTED");
            if (!v.weight_violations.empty())
                std::printf("negative weights at %zu squares\n", v.weight_violations.size());
            if (!v.identity_residual.is_zero()) std::puts("nonzero identity residual");
            return kExitUnproved;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
