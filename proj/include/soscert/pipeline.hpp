#pragma once

#include <string>
#include <vector>

#include "soscert/conjecture.hpp"
#include "soscert/lean_emit.hpp"
#include "soscert/recover.hpp"
#include "soscert/refine.hpp"
#include "soscert/reward.hpp"

namespace soscert {

enum class Outcome { proved, recovery_failed, no_candidate, timeout };

const char* to_string(Outcome o);
const char* to_string(LeanCheckStatus s);

struct PipelineConfig {
    int budget_k = 32;
    double timeout_s = 3600.0;
    RefineConfig refine;
    RecoverConfig recover;
    RewardConfig reward;
    LeanEmitConfig lean;
    int parallelism = 1;
    std::uint64_t seed = 0;
    std::string out_dir;  // certificates and Lean scripts land here when set
};

struct StageTimes {
    double conjecture_s = 0.0;
    double refine_s = 0.0;
    double recover_s = 0.0;
    double lean_s = 0.0;
};

struct PipelineReport {
    std::string problem_id;
    int nvars = 0;
    Outcome outcome = Outcome::no_candidate;
    StageTimes times;
    double total_s = 0.0;
    double winning_theta = 0.0;
    int candidates_tried = 0;
    int refine_iterations = 0;
    int squares = 0;
    std::string certificate_path;
    std::string lean_path;
    LeanCheckStatus lean_status = LeanCheckStatus::skipped;
    std::string detail;  // last stage failure, for diagnostics
};

/// End-to-end: conjecture, rank by theta, then per candidate refine ->
/// recover (interior/boundary by numerical rank, interior failure falls back
/// to boundary) -> verify -> emit Lean. First exact certificate wins.
/// Requires a nonzero target of even degree.
PipelineReport solve(const Polynomial& f, const std::string& problem_id,
                     ConjectureSource& source, const PipelineConfig& cfg);

struct BenchRow {
    PipelineReport report;
};

struct BenchSummary {
    std::vector<BenchRow> rows;
    // deterministic TSV (no wall times); byte-identical under fixed seeds
    std::string report_tsv;
    // human-readable summary including mean times of solved instances
    std::string human_summary;
    bool audit_ok = true;  // every "proved" row re-verified from disk
};

/// Runs every *.poly under problem_dir (sorted by name). When out_report is
/// nonempty the TSV is written there. Problems run in parallel up to
/// cfg.parallelism; rows are collected in input order.
BenchSummary bench(const std::string& problem_dir, const std::string& out_report,
                   ConjectureSource& source, const PipelineConfig& cfg);

/// Re-reads and re-verifies every claimed proof in a bench summary.
bool soundness_audit(const BenchSummary& summary, const std::string& problem_dir);

}  // namespace soscert
