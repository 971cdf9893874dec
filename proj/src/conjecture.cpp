#include "soscert/conjecture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "soscert/basis.hpp"
#include "soscert/lattice.hpp"
#include "soscert/poly_text.hpp"
#include "soscert/rng.hpp"

namespace soscert {

const char* to_string(SosParseStatus s) {
    switch (s) {
        case SosParseStatus::ok: return "ok";
        case SosParseStatus::missing_delimiter: return "missing_delimiter";
        case SosParseStatus::non_square_term: return "non_square_term";
        case SosParseStatus::negative_weight: return "negative_weight";
        case SosParseStatus::syntax_error: return "syntax_error";
    }
    return "?";
}

namespace {

std::size_t find_delimiter(const std::string& text) {
    // last occurrence, so chatter that merely mentions the marker is skipped
    static const char* kMarkers[] = {"<SOS Expression>", "(SOS Expression)"};
    std::size_t best = std::string::npos;
    for (auto* m : kMarkers) {
        std::size_t pos = text.rfind(m);
        if (pos != std::string::npos) {
            std::size_t after = pos + std::string(m).size();
            if (best == std::string::npos || after > best) best = after;
        }
    }
    return best;
}

void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// numeric literal (integer/decimal/rational/scientific), parsed exactly by
// reusing the polynomial literal grammar; must reduce to a constant
bool parse_weight_text(const std::string& text, Rational& out) {
    try {
        Polynomial p = parse_polynomial(text, 1);
        if (p.total_degree() != 0) return false;
        out = p.is_zero() ? Rational(0) : p.terms().begin()->second;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

SosParseResult parse_sos_response(const std::string& text, int nvars, unsigned prec_bits) {
    SosParseResult res;
    std::size_t i = find_delimiter(text);
    if (i == std::string::npos) {
        res.status = SosParseStatus::missing_delimiter;
        return res;
    }
    skip_ws(text, i);
    if (i < text.size() && text[i] == ':') ++i;

    bool first = true;
    for (;;) {
        skip_ws(text, i);
        if (i >= text.size()) break;
        if (!first) {
            if (text[i] != '+') break;  // trailing prose after the expression
            ++i;
            skip_ws(text, i);
        }

        // optional weight before the parenthesized square
        std::size_t term_start = i;
        std::size_t paren = text.find('(', i);
        if (paren == std::string::npos) {
            if (first) {
                res.status = SosParseStatus::non_square_term;
                return res;
            }
            break;
        }
        std::string wtext = text.substr(term_start, paren - term_start);
        // strip a trailing '*'
        while (!wtext.empty() && std::isspace(static_cast<unsigned char>(wtext.back()))) wtext.pop_back();
        if (!wtext.empty() && wtext.back() == '*') wtext.pop_back();
        Rational weight(1);
        if (!wtext.empty()) {
            bool only_ws = wtext.find_first_not_of(" \t\r\n") == std::string::npos;
            if (!only_ws && !parse_weight_text(wtext, weight)) {
                if (first) {
                    res.status = SosParseStatus::non_square_term;
                    return res;
                }
                break;  // next token is not part of the expression
            }
        }
        if (weight < 0) {
            res.status = SosParseStatus::negative_weight;
            return res;
        }

        // matching closing parenthesis
        int depth = 0;
        std::size_t close = std::string::npos;
        for (std::size_t j = paren; j < text.size(); ++j) {
            if (text[j] == '(') ++depth;
            if (text[j] == ')') {
                --depth;
                if (depth == 0) {
                    close = j;
                    break;
                }
            }
        }
        if (close == std::string::npos) {
            res.status = SosParseStatus::syntax_error;
            return res;
        }
        std::size_t j = close + 1;
        skip_ws(text, j);
        if (j >= text.size() || text[j] != '^') {
            res.status = SosParseStatus::non_square_term;
            return res;
        }
        ++j;
        skip_ws(text, j);
        if (j >= text.size() || text[j] != '2') {
            res.status = SosParseStatus::non_square_term;
            return res;
        }
        ++j;

        Polynomial inner;
        try {
            inner = parse_polynomial(text.substr(paren + 1, close - paren - 1), nvars);
        } catch (const std::exception&) {
            res.status = SosParseStatus::syntax_error;
            return res;
        }
        res.terms.push_back({weight, to_float_polynomial(inner, prec_bits)});
        i = j;
        first = false;
    }
    if (res.terms.empty()) {
        res.status = SosParseStatus::non_square_term;
        return res;
    }
    res.status = SosParseStatus::ok;
    return res;
}

ConjectureCandidate score_candidate(const Polynomial& f, const std::string& raw_text,
                                    const std::string& source_tag, std::size_t arrival,
                                    unsigned prec_bits) {
    ConjectureCandidate c;
    c.raw_text = raw_text;
    c.source_tag = source_tag;
    c.arrival = arrival;
    SosParseResult parsed = parse_sos_response(raw_text, f.nvars(), prec_bits);
    if (!parsed.ok()) {
        c.format_ok = false;
        c.theta = std::numeric_limits<double>::infinity();
        return c;
    }
    c.parsed = std::move(parsed.terms);
    c.format_ok = true;
    FloatPolynomial expansion = expand_weighted_squares_float(c.parsed, f.nvars(), prec_bits);
    c.theta = coeff_l2_distance(f, expansion, prec_bits).to_double();
    return c;
}

std::vector<ConjectureCandidate> source_propose(ConjectureSource& src,
                                                const ConjectureRequest& req) {
    return src.propose(req);
}

void rank(std::vector<ConjectureCandidate>& candidates) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const ConjectureCandidate& a, const ConjectureCandidate& b) {
                         if (a.theta != b.theta) return a.theta < b.theta;
                         if (a.source_tag != b.source_tag) return a.source_tag < b.source_tag;
                         return a.arrival < b.arrival;
                     });
}

// The instruction block sent to a conjecturer. "{polynomial}" is replaced by
// the canonical form of the target.
static const char* kPromptTemplate = R"(Task:
You are given a polynomial that is the expanded form of a sum-of-squares (SOS) expression. Your task is to reconstruct a plausible SOS representation whose expanded form matches the given polynomial as closely as possible.

Instructions:
1. Analyze the input polynomial carefully, focusing on the coefficients and the combinations of variables involved.
2. Infer possible linear or polynomial terms inside each square in the sum-of-squares expression.
3. Construct a sum of square terms without expanding the squares. Keep the output compact and well-structured.
4. Aim for the expanded form of your SOS expression to closely approximate the coefficients in the original polynomial. Minor numerical deviations are acceptable.
5. If multiple valid SOS decompositions exist, prefer one that is simple, symmetric, and easy to interpret.
6. Include variables and constants inside parentheses when appropriate to match constant terms in the input polynomial.

Output format:
Please provide your response in the following structure:
<SOS Expression>: <sum_of_squares_expression>

Where <sum_of_squares_expression> is a sum-of-squares term, expressed compactly.
For example:
(x1 + 1)^2 + (2*x1 + 3*x2)^2

Key considerations:
1. Do not simply rewrite the input polynomial or output expanded terms. The output must be a sum-of-squares expression.
2. Constants inside square terms can be fractional or decimal, as needed, to best approximate the original polynomial.
3. Avoid expanding the squares in the output; always keep terms inside parentheses squared.
4. Aim for clear and interpretable variable groupings. Symmetry and simplicity are preferred if multiple answers fit.
5. Your SOS expression should fully explain the input polynomial's structure and coefficients to the best achievable extent.

Example:
Input polynomial:
x1^2 + 2*x1 + 1
Output:
(SOS Expression): (x1 + 1)^2
Explanation:
The polynomial is a perfect square trinomial; the SOS reconstruction is exact.

Input polynomial:
5*x1^2 + 12*x1*x2 + 6*x1 + 9*x2^2 + 9
Output:
(SOS Expression): (x1 + 2.99)^2 + (2*x1 + 3*x2)^2

Now, please provide the SOS reconstruction for the following polynomial:
Original polynomial: {polynomial}
)";

std::string build_prompt(const Polynomial& f) {
    std::string prompt = kPromptTemplate;
    const std::string key = "{polynomial}";
    std::size_t pos = prompt.find(key);
    prompt.replace(pos, key.size(), print_polynomial(f));
    return prompt;
}

std::string print_sos_expression(const std::vector<WeightedSquare>& terms) {
    if (terms.empty()) return "(0)^2";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " + ";
        if (terms[i].weight != 1) {
            out += rat_str(terms[i].weight);
            out += "*";
        }
        out += "(";
        out += print_polynomial(terms[i].square);
        out += ")^2";
    }
    return out;
}

std::vector<ConjectureCandidate> ReplaySource::propose(const ConjectureRequest& req) {
    std::ifstream is(path_);
    if (!is) throw std::runtime_error("replay source: cannot open " + path_);
    std::vector<ConjectureCandidate> out;
    std::string line;
    std::size_t arrival = 0;
    while (std::getline(is, line) && static_cast<int>(out.size()) < req.budget_k) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::string raw = line.find("SOS Expression") == std::string::npos
                              ? "<SOS Expression>: " + line
                              : line;
        out.push_back(score_candidate(req.f, raw, tag(), arrival++));
    }
    return out;
}

namespace {

// Rounds factor entries to small rationals; returns the SOS expression text
// when some denominator bound reproduces f exactly.
std::optional<std::string> snap_factor(const Polynomial& f, const FactorMatrix& L) {
    static const long kBounds[] = {8, 64, 512, 4096};
    for (long bound : kBounds) {
        std::vector<WeightedSquareExact> squares;
        for (auto& col : L.columns) {
            Polynomial q(f.nvars());
            for (std::size_t i = 0; i < L.m(); ++i) {
                if (col[i].is_zero()) continue;
                Rational r = rationalize(col[i], Int(bound));
                if (r != 0) q.add_term(L.basis.monomials[i], r);
            }
            if (!q.is_zero()) squares.push_back({Rational(1), std::move(q)});
        }
        if (squares.empty()) continue;
        if (expand_weighted_squares(squares) == f) {
            std::string text;
            for (std::size_t i = 0; i < squares.size(); ++i) {
                if (i) text += " + ";
                text += "(" + print_polynomial(squares[i].square) + ")^2";
            }
            return text;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<ConjectureCandidate> baseline_conjecture(const Polynomial& f,
                                                     const MonomialBasis& basis,
                                                     const BaselineConfig& cfg,
                                                     double timeout_s) {
    std::vector<ConjectureCandidate> out;
    const std::size_t m = basis.size();
    if (m == 0 || f.is_zero()) return out;

    Deadline deadline = timeout_s > 0 ? Deadline::in_seconds(timeout_s) : Deadline::none();
    Rng rng(split_seed(cfg.seed, 0xba5e));

    // magnitude scale so the initial expansion is in f's coefficient range
    double fmax = 0.0;
    for (auto& [mon, c] : f.terms()) fmax = std::max(fmax, std::fabs(c.convert_to<double>()));
    double scale = std::sqrt(std::max(fmax, 1.0) / static_cast<double>(m));

    RefineConfig rcfg;
    rcfg.precision_bits = cfg.search_precision_bits;
    rcfg.tol_tau = 1e-14;
    rcfg.max_iters = cfg.search_iters;
    rcfg.deadline = deadline;

    const std::size_t max_rank = std::min<std::size_t>(static_cast<std::size_t>(cfg.max_rank), m);
    int good = 0;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        if (deadline.expired()) break;
        std::size_t k = 1 + (static_cast<std::size_t>(restart) % max_rank);
        FactorMatrix L0;
        L0.basis = basis;
        for (std::size_t c = 0; c < k; ++c) {
            FloatVec col;
            col.reserve(m);
            for (std::size_t i = 0; i < m; ++i)
                col.push_back(BigFloat((rng.uniform01() * 2.0 - 1.0) * scale,
                                       cfg.search_precision_bits));
            L0.columns.push_back(std::move(col));
        }
        RefineOutcome refined = gauss_newton(f, L0, rcfg);
        bool finite = true;
        for (auto& col : refined.factor.columns)
            for (auto& x : col)
                if (!x.is_finite()) finite = false;
        if (!finite) continue;  // diverged restart contributes nothing

        // snap polish: when the factor entries round to small rationals that
        // reproduce f exactly, emit the exact candidate
        if (refined.theta_final < 1e-6) {
            if (auto snapped = snap_factor(f, refined.factor)) {
                std::string raw = "<SOS Expression>: " + *snapped;
                out.push_back(score_candidate(f, raw, "baseline", static_cast<std::size_t>(restart)));
                ++good;
                if (good >= cfg.good_candidates_wanted) break;
                continue;
            }
        }

        std::vector<WeightedSquare> terms;
        for (auto& col : refined.factor.columns) {
            FloatPolynomial q(f.nvars());
            for (std::size_t i = 0; i < m; ++i)
                if (!col[i].is_zero()) q.add_term(basis.monomials[i], col[i]);
            if (!q.is_zero()) terms.push_back({Rational(1), std::move(q)});
        }
        if (terms.empty()) continue;
        std::string raw = "<SOS Expression>: " + print_sos_expression(terms);
        out.push_back(score_candidate(f, raw, "baseline", static_cast<std::size_t>(restart)));
        if (out.back().format_ok && out.back().theta < 1e-12 &&
            ++good >= cfg.good_candidates_wanted)
            break;
    }
    rank(out);
    return out;
}

std::vector<ConjectureCandidate> BaselineSource::propose(const ConjectureRequest& req) {
    if (req.f.total_degree() % 2 != 0) return {};
    MonomialBasis basis = support_restricted_basis(req.f);
    BaselineConfig c = cfg_;
    c.restarts = std::min(c.restarts, req.budget_k);
    auto out = baseline_conjecture(req.f, basis, c, req.timeout_s);
    if (static_cast<int>(out.size()) > req.budget_k) out.resize(static_cast<std::size_t>(req.budget_k));
    return out;
}

}  // namespace soscert
