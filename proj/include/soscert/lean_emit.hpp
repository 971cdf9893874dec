#pragma once

#include <string>
#include <vector>

#include "soscert/certificate.hpp"

namespace soscert {

struct LeanEmitConfig {
    std::string theorem_name = "poly_nonneg";
    std::vector<std::string> variable_names;  // defaults to x1..xn
    bool include_imports = true;
    // External checker invocation: argv prefix; the script path is appended
    // as the final argument, exit code 0 means verified.
    std::vector<std::string> lean_check_command;
    double check_timeout_s = 600.0;
};

/// Byte-deterministic Lean 4 script proving f >= 0 from its certificate.
/// Refuses (throws) when the certificate does not check out against f.
std::string emit_lean(const Polynomial& f, const SosCertificate& cert, const LeanEmitConfig& cfg);

enum class LeanCheckStatus { pass, fail, skipped };

struct LeanCheckResult {
    LeanCheckStatus status = LeanCheckStatus::skipped;
    int exit_code = 0;
    std::string output;
};

/// Writes the script to a scratch file and runs the configured command.
/// No command configured -> skipped, never a failure.
LeanCheckResult lean_check(const std::string& script, const LeanEmitConfig& cfg);

/// Inverse of the emitted `terms` list: (weight, base) pairs parsed back
/// from a script. Used to check emission round-trips.
std::vector<WeightedSquareExact> parse_terms_list(const std::string& script, int nvars);

}  // namespace soscert
