#pragma once

#include <map>
#include <string>

#include "soscert/polynomial.hpp"

namespace soscert {

/// On-disk problem: one polynomial per file, '#'-prefixed metadata lines
/// ("# nvars: 3", "# source: ..."). When the nvars header is absent the
/// variable count is inferred from the largest index used.
struct ProblemFile {
    Polynomial f;
    std::map<std::string, std::string> metadata;
};

ProblemFile read_problem_file(const std::string& path);
ProblemFile parse_problem_text(const std::string& text);
void write_problem_file(const std::string& path, const Polynomial& f,
                        const std::map<std::string, std::string>& metadata = {});

}  // namespace soscert
