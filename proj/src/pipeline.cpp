#include "soscert/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "soscert/problem_io.hpp"

namespace soscert {

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::proved: return "proved";
        case Outcome::recovery_failed: return "recovery_failed";
        case Outcome::no_candidate: return "no_candidate";
        case Outcome::timeout: return "timeout";
    }
    return "?";
}

const char* to_string(LeanCheckStatus s) {
    switch (s) {
        case LeanCheckStatus::pass: return "pass";
        case LeanCheckStatus::fail: return "fail";
        case LeanCheckStatus::skipped: return "skipped";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

PipelineReport solve(const Polynomial& f, const std::string& problem_id,
                     ConjectureSource& source, const PipelineConfig& cfg) {
    if (f.is_zero()) throw std::invalid_argument("solve: target polynomial is zero");
    if (f.total_degree() % 2 != 0)
        throw std::invalid_argument("solve: target polynomial has odd degree");

    PipelineReport report;
    report.problem_id = problem_id;
    report.nvars = f.nvars();

    const auto t_start = Clock::now();
    Deadline deadline = cfg.timeout_s > 0 ? Deadline::in_seconds(cfg.timeout_s) : Deadline::none();

    ConjectureRequest req;
    req.f = f;
    req.budget_k = cfg.budget_k;
    req.timeout_s = cfg.timeout_s;

    std::vector<ConjectureCandidate> candidates;
    try {
        candidates = source.propose(req);
    } catch (const std::exception& e) {
        report.detail = std::string("conjecture source failed: ") + e.what();
    }
    rank(candidates);
    if (static_cast<int>(candidates.size()) > cfg.budget_k)
        candidates.resize(static_cast<std::size_t>(cfg.budget_k));
    report.times.conjecture_s = seconds_since(t_start);

    if (candidates.empty()) {
        report.outcome = deadline.expired() ? Outcome::timeout : Outcome::no_candidate;
        report.total_s = seconds_since(t_start);
        return report;
    }

    MonomialBasis restricted = support_restricted_basis(f);
    bool attempted_recovery = false;

    for (auto& cand : candidates) {
        if (deadline.expired()) {
            report.outcome = Outcome::timeout;
            report.total_s = seconds_since(t_start);
            return report;
        }
        if (!cand.format_ok) continue;
        ++report.candidates_tried;

        // basis implied by the candidate, widened by the sparse basis of f
        std::vector<Monomial> extra;
        for (auto& ws : cand.parsed)
            for (auto& [mon, c] : ws.square.terms()) extra.push_back(mon);
        MonomialBasis basis = merge_bases(restricted, extra);

        // refine
        auto t_refine = Clock::now();
        RefineConfig rcfg = cfg.refine;
        rcfg.deadline = deadline;
        RefineOutcome refined;
        try {
            FactorMatrix L0 = initial_factor(cand.parsed, basis, cfg.refine.precision_bits);
            refined = gauss_newton(f, L0, rcfg);
        } catch (const std::exception& e) {
            report.detail = std::string("refine: ") + e.what();
            report.times.refine_s += seconds_since(t_refine);
            continue;
        }
        report.times.refine_s += seconds_since(t_refine);
        report.refine_iterations += refined.iterations;
        if (!refined.converged) {
            report.detail = "refinement did not converge (theta = " +
                            std::to_string(refined.theta_final) + ")";
            continue;
        }

        // recover: interior when numerically full rank, boundary otherwise;
        // a failed interior attempt falls back to boundary
        auto t_recover = Clock::now();
        GramNumeric gn = prune_redundant_monomials(refined.gram, cfg.recover.rank_eps);
        LinearSystem sys;
        try {
            sys = matching_system(f, gn.basis);
        } catch (const std::exception& e) {
            report.detail = std::string("matching system: ") + e.what();
            report.times.recover_s += seconds_since(t_recover);
            continue;
        }
        attempted_recovery = true;
        RecoverConfig recfg = cfg.recover;
        recfg.tau_hint = cfg.refine.tol_tau;
        std::size_t rank = numerical_rank(gn, recfg.rank_eps);
        RecoverOutcome rec;
        if (rank == gn.dim()) {
            rec = interior_recover(f, gn, sys, recfg);
            if (!rec.ok) {
                std::string interior_failure = rec.failure;
                rec = boundary_recover(f, gn, sys, recfg);
                if (!rec.ok) rec.failure = "interior: " + interior_failure + "; boundary: " + rec.failure;
            }
        } else {
            rec = boundary_recover(f, gn, sys, recfg);
        }
        report.times.recover_s += seconds_since(t_recover);
        if (!rec.ok) {
            report.detail = "recovery: " + rec.failure;
            continue;
        }

        // certificate + exact verification (the single authority)
        SosCertificate cert = gram_to_certificate(rec.gram);
        Verdict verdict = check_certificate(f, cert);
        if (!verdict.ok) {
            report.detail = "recovered certificate failed exact verification";
            continue;
        }

        report.winning_theta = cand.theta;
        report.squares = static_cast<int>(cert.squares.size());

        if (!cfg.out_dir.empty()) {
            namespace fs = std::filesystem;
            fs::create_directories(cfg.out_dir);
            fs::path cpath = fs::path(cfg.out_dir) / (problem_id + ".cert");
            write_certificate_file(cpath.string(), cert);
            report.certificate_path = cpath.string();

            auto t_lean = Clock::now();
            LeanEmitConfig lcfg = cfg.lean;
            if (lcfg.theorem_name == "poly_nonneg") {
                std::string suffix = problem_id;
                for (auto& ch : suffix)
                    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                lcfg.theorem_name = "poly_nonneg_" + suffix;
            }
            std::string script = emit_lean(f, cert, lcfg);
            fs::path lpath = fs::path(cfg.out_dir) / (problem_id + ".lean");
            std::ofstream(lpath, std::ios::binary) << script;
            report.lean_path = lpath.string();
            report.lean_status = lean_check(script, lcfg).status;
            report.times.lean_s = seconds_since(t_lean);
            if (report.lean_status == LeanCheckStatus::fail) {
                // proved requires a lean status of pass or skipped
                report.detail = "lean check rejected the emitted script";
                continue;
            }
        }

        report.outcome = Outcome::proved;
        report.detail.clear();
        report.total_s = seconds_since(t_start);
        return report;
    }

    if (deadline.expired())
        report.outcome = Outcome::timeout;
    else
        report.outcome = attempted_recovery ? Outcome::recovery_failed : Outcome::no_candidate;
    report.total_s = seconds_since(t_start);
    return report;
}

namespace {

std::string report_row(const PipelineReport& r) {
    std::ostringstream os;
    os << r.problem_id << "\t" << r.nvars << "\t" << to_string(r.outcome) << "\t";
    if (r.outcome == Outcome::proved) {
        char theta[32];
        std::snprintf(theta, sizeof(theta), "%.3e", r.winning_theta);
        os << theta;
    } else {
        os << "-";
    }
    // certificate name relative to the artifact directory, so reruns into
    // different directories still produce byte-identical reports
    std::string cert = r.certificate_path.empty()
                           ? "-"
                           : std::filesystem::path(r.certificate_path).filename().string();
    os << "\t" << r.candidates_tried << "\t" << r.squares << "\t" << cert << "\t"
       << to_string(r.lean_status);
    return os.str();
}

}  // namespace

BenchSummary bench(const std::string& problem_dir, const std::string& out_report,
                   ConjectureSource& source, const PipelineConfig& cfg) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (auto& entry : fs::directory_iterator(problem_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".poly")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    BenchSummary summary;
    summary.rows.resize(files.size());
    std::vector<std::string> warnings(files.size());

    const int threads = std::max(1, cfg.parallelism);
#ifdef SOSCERT_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::string id = files[i].stem().string();
        try {
            ProblemFile pf = read_problem_file(files[i].string());
            summary.rows[i].report = solve(pf.f, id, source, cfg);
        } catch (const std::exception& e) {
            warnings[i] = files[i].string() + ": " + e.what();
            summary.rows[i].report.problem_id = id;
            summary.rows[i].report.outcome = Outcome::no_candidate;
            summary.rows[i].report.detail = e.what();
        }
    }

    // deterministic TSV: no wall-clock columns
    std::ostringstream tsv;
    tsv << "id\tnvars\toutcome\ttheta\tcandidates\tsquares\tcertificate\tlean\n";
    for (auto& row : summary.rows) tsv << report_row(row.report) << "\n";

    // aggregate by nvars
    std::map<int, std::pair<int, int>> by_n;  // nvars -> (solved, total)
    std::map<int, double> time_by_n;
    for (auto& row : summary.rows) {
        auto& [solved, total] = by_n[row.report.nvars];
        ++total;
        if (row.report.outcome == Outcome::proved) {
            ++solved;
            time_by_n[row.report.nvars] += row.report.total_s;
        }
    }
    tsv << "# aggregate pass rate by nvars\n";
    tsv << "# nvars\tsolved\ttotal\tpass\n";
    for (auto& [n, st] : by_n) {
        char pct[16];
        std::snprintf(pct, sizeof(pct), "%.1f%%",
                      st.second ? 100.0 * st.first / st.second : 0.0);
        tsv << "# " << n << "\t" << st.first << "\t" << st.second << "\t" << pct << "\n";
    }
    summary.report_tsv = tsv.str();

    std::ostringstream human;
    human << "problems: " << summary.rows.size() << "\n";
    for (auto& [n, st] : by_n) {
        human << "  n=" << n << ": " << st.first << "/" << st.second << " proved";
        if (st.first)
            human << ", mean t(s) of solved = " << time_by_n[n] / st.first;
        human << "\n";
    }
    for (auto& w : warnings)
        if (!w.empty()) human << "warning: skipped " << w << "\n";
    summary.human_summary = human.str();

    summary.audit_ok = soundness_audit(summary, problem_dir);

    if (!out_report.empty()) {
        std::ofstream os(out_report, std::ios::binary);
        if (!os) throw std::runtime_error("bench: cannot write report " + out_report);
        os << summary.report_tsv;
    }
    return summary;
}

bool soundness_audit(const BenchSummary& summary, const std::string& problem_dir) {
    namespace fs = std::filesystem;
    for (auto& row : summary.rows) {
        const PipelineReport& r = row.report;
        if (r.outcome != Outcome::proved) continue;
        if (r.lean_status == LeanCheckStatus::fail) return false;
        if (r.certificate_path.empty()) {
            // proved without artifacts is only legitimate when no out_dir was set
            continue;
        }
        try {
            SosCertificate cert = read_certificate_file(r.certificate_path);
            ProblemFile pf =
                read_problem_file((fs::path(problem_dir) / (r.problem_id + ".poly")).string());
            if (!check_certificate(pf.f, cert).ok) return false;
        } catch (const std::exception&) {
            return false;
        }
    }
    return true;
}

}  // namespace soscert
