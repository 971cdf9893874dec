#include "soscert/lean_emit.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "soscert/poly_text.hpp"

namespace soscert {

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
    return true;
}

std::string lean_poly(const Polynomial& p) {
    // the canonical text form is already Lean syntax (*, ^, a/b coefficients)
    return print_polynomial(p);
}

}  // namespace

std::string emit_lean(const Polynomial& f, const SosCertificate& cert, const LeanEmitConfig& cfg) {
    if (!valid_identifier(cfg.theorem_name))
        throw std::invalid_argument("emit_lean: invalid theorem name");
    Verdict v = check_certificate(f, cert);
    if (!v.ok) throw std::domain_error("emit_lean: certificate does not prove this polynomial");

    std::vector<std::string> vars = cfg.variable_names;
    if (vars.empty())
        for (int i = 1; i <= f.nvars(); ++i) vars.push_back("x" + std::to_string(i));
    if (static_cast<int>(vars.size()) != f.nvars())
        throw std::invalid_argument("emit_lean: variable name count mismatch");

    std::ostringstream os;
    if (cfg.include_imports) os << "import Mathlib\n\n";
    os << "theorem " << cfg.theorem_name << " (";
    for (auto& name : vars) os << name << " ";
    os << "I : Real)\n";
    os << "  (h1 : I = " << lean_poly(f) << ") :\n";
    os << "  I >= 0 := by\n";
    os << "  -- Step 1: Construct SOS term list\n";
    os << "  let terms : List (Real × Real) :=\n";
    os << "    [ ";
    for (std::size_t i = 0; i < cert.squares.size(); ++i) {
        if (i) os << ", ";
        os << "(" << rat_str(cert.squares[i].weight) << ", " << lean_poly(cert.squares[i].square)
           << ")";
    }
    os << " ]\n";
    os << "  -- Step 2: Prove equality between polynomial and its SOS expansion\n";
    os << "  have : I = (terms.map (fun (p, k) => p * k^2)).sum := by\n";
    os << "    unfold terms\n";
    os << "    simp only [List.map_cons, List.map_nil, List.sum_cons, List.sum_nil,\n";
    os << "      one_mul, mul_one, zero_mul, add_zero, zero_add, neg_mul]\n";
    os << "    linear_combination h1\n";
    os << "  -- Step 3: Substitute and simplify\n";
    os << "  rw [this]\n";
    os << "  unfold terms\n";
    os << "  simp only [List.map_cons, List.map_nil, List.sum_cons, List.sum_nil,\n";
    os << "    one_mul, mul_one, zero_mul, add_zero, zero_add, ge_iff_le]\n";
    os << "  -- Step 4: Apply positivity tactic to conclude\n";
    os << "  positivity\n";
    return os.str();
}

LeanCheckResult lean_check(const std::string& script, const LeanEmitConfig& cfg) {
    LeanCheckResult result;
    if (cfg.lean_check_command.empty()) {
        result.status = LeanCheckStatus::skipped;
        return result;
    }

    namespace fs = std::filesystem;
    fs::path scratch = fs::temp_directory_path() /
                       ("soscert_check_" + std::to_string(::getpid()) + ".lean");
    {
        std::ofstream os(scratch, std::ios::binary);
        os << script;
    }

    // command line with the script path appended; bounded by `timeout`
    std::ostringstream cmd;
    cmd << "timeout " << static_cast<long>(cfg.check_timeout_s);
    for (auto& arg : cfg.lean_check_command) cmd << " '" << arg << "'";
    cmd << " '" << scratch.string() << "' 2>&1";

    FILE* pipe = ::popen(cmd.str().c_str(), "r");
    if (!pipe) {
        result.status = LeanCheckStatus::skipped;
        result.output = "could not start checker";
        return result;
    }
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) result.output.append(buf, got);
    int rc = ::pclose(pipe);
    std::error_code ec;
    fs::remove(scratch, ec);

    int exit_code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    result.exit_code = exit_code;
    if (exit_code == 127) {
        result.status = LeanCheckStatus::skipped;  // toolchain missing
    } else if (exit_code == 0) {
        result.status = LeanCheckStatus::pass;
    } else {
        result.status = LeanCheckStatus::fail;
    }
    return result;
}

std::vector<WeightedSquareExact> parse_terms_list(const std::string& script, int nvars) {
    auto anchor = script.find("let terms");
    if (anchor == std::string::npos) throw std::runtime_error("parse_terms_list: no terms list");
    auto open = script.find('[', anchor);
    if (open == std::string::npos) throw std::runtime_error("parse_terms_list: no '['");
    auto close = script.find(']', open);
    if (close == std::string::npos) throw std::runtime_error("parse_terms_list: no ']'");
    std::string body = script.substr(open + 1, close - open - 1);

    std::vector<WeightedSquareExact> terms;
    std::size_t i = 0;
    while (i < body.size()) {
        auto lp = body.find('(', i);
        if (lp == std::string::npos) break;
        int depth = 0;
        std::size_t rp = std::string::npos;
        std::size_t comma = std::string::npos;
        for (std::size_t j = lp; j < body.size(); ++j) {
            if (body[j] == '(') ++depth;
            if (body[j] == ',' && depth == 1 && comma == std::string::npos) comma = j;
            if (body[j] == ')') {
                if (--depth == 0) {
                    rp = j;
                    break;
                }
            }
        }
        if (rp == std::string::npos || comma == std::string::npos)
            throw std::runtime_error("parse_terms_list: malformed pair");
        Polynomial w = parse_polynomial(body.substr(lp + 1, comma - lp - 1), nvars);
        if (w.total_degree() != 0) throw std::runtime_error("parse_terms_list: non-constant weight");
        Rational weight = w.is_zero() ? Rational(0) : w.terms().begin()->second;
        Polynomial base = parse_polynomial(body.substr(comma + 1, rp - comma - 1), nvars);
        terms.push_back({weight, std::move(base)});
        i = rp + 1;
    }
    return terms;
}

}  // namespace soscert
