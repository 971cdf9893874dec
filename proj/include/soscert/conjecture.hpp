#pragma once

#include <memory>
#include <string>
#include <vector>

#include "soscert/polynomial.hpp"
#include "soscert/refine.hpp"

namespace soscert {

/// How a model response failed to parse; feeds the format reward.
enum class SosParseStatus {
    ok,
    missing_delimiter,
    non_square_term,
    negative_weight,
    syntax_error,
};

const char* to_string(SosParseStatus s);

struct SosParseResult {
    SosParseStatus status = SosParseStatus::syntax_error;
    std::vector<WeightedSquare> terms;

    bool ok() const { return status == SosParseStatus::ok; }
};

/// Extracts the expression after the "<SOS Expression>:" delimiter (the
/// parenthesized spelling "(SOS Expression):" is accepted too) and parses a
/// sum of c*(poly)^2 / (poly)^2 terms. Weights parse exactly; the square
/// polynomials are held at prec_bits.
SosParseResult parse_sos_response(const std::string& text, int nvars, unsigned prec_bits = 128);

/// One scored conjecture. theta is the backward error of the parsed
/// expression against the target it was scored with; +infinity (and
/// format_ok = false) for malformed responses.
struct ConjectureCandidate {
    std::string raw_text;
    std::vector<WeightedSquare> parsed;
    double theta = 0.0;
    bool format_ok = false;
    std::string source_tag;
    std::size_t arrival = 0;
};

struct ConjectureRequest {
    Polynomial f;
    int budget_k = 32;
    double timeout_s = 3600.0;
};

/// The shared scoring path: parse raw_text, expand, measure theta against f.
/// All sources build their candidates through here so that rescoring a
/// candidate from its raw text reproduces theta bit for bit.
ConjectureCandidate score_candidate(const Polynomial& f, const std::string& raw_text,
                                    const std::string& source_tag, std::size_t arrival,
                                    unsigned prec_bits = 128);

/// A source of SOS structure conjectures (remote model, file replay, or the
/// built-in numeric baseline). Stateless between requests.
class ConjectureSource {
  public:
    virtual ~ConjectureSource() = default;
    virtual std::vector<ConjectureCandidate> propose(const ConjectureRequest& req) = 0;
    virtual std::string tag() const = 0;
};

std::vector<ConjectureCandidate> source_propose(ConjectureSource& src,
                                                const ConjectureRequest& req);

/// Prompt template with "{polynomial}" substituted by the canonical form.
std::string build_prompt(const Polynomial& f);

/// Ascending theta; ties keep source_tag order then arrival order; malformed
/// (+infinity) candidates sort last.
void rank(std::vector<ConjectureCandidate>& candidates);

/// Replays one SOS expression per line from a file. Lines are scored in
/// order; empty lines are skipped.
class ReplaySource : public ConjectureSource {
  public:
    explicit ReplaySource(std::string path) : path_(std::move(path)) {}
    std::vector<ConjectureCandidate> propose(const ConjectureRequest& req) override;
    std::string tag() const override { return "replay"; }

  private:
    std::string path_;
};

/// Numeric stand-in for a trained conjecturer: random low-rank factors
/// refined to local optima of the backward error, printed as SOS text.
/// Refined factors whose entries snap to small rationals reproducing the
/// target exactly are emitted with exact coefficients.
struct BaselineConfig {
    int restarts = 20;
    int max_rank = 8;  // capped at the basis size; ranks are swept cyclically
    unsigned search_precision_bits = 96;
    int search_iters = 40;
    std::uint64_t seed = 1;
    int good_candidates_wanted = 3;  // stop once this many near-zero thetas exist
};

class BaselineSource : public ConjectureSource {
  public:
    explicit BaselineSource(BaselineConfig cfg) : cfg_(cfg) {}
    std::vector<ConjectureCandidate> propose(const ConjectureRequest& req) override;
    std::string tag() const override { return "baseline"; }

  private:
    BaselineConfig cfg_;
};

std::vector<ConjectureCandidate> baseline_conjecture(const Polynomial& f,
                                                     const MonomialBasis& basis,
                                                     const BaselineConfig& cfg,
                                                     double timeout_s);

/// Remote conjecturer over HTTP. The request body is a chat-style JSON
/// object {"model", "temperature", "messages":[{"role":"user","content"}]};
/// the reply may carry the text under choices[0].message.content,
/// choices[0].text, "content", or "text". The bearer token is read from an
/// environment variable.
struct HttpSourceConfig {
    std::string url;                 // http://host:port/path
    std::string model = "conjecturer";
    double temperature = 0.8;
    std::string auth_header = "Authorization";
    std::string token_env = "SOSCERT_HTTP_TOKEN";
    int candidates_per_call = 1;
    int max_retries = 2;
    double request_timeout_s = 60.0;
};

class HttpSource : public ConjectureSource {
  public:
    explicit HttpSource(HttpSourceConfig cfg) : cfg_(std::move(cfg)) {}
    std::vector<ConjectureCandidate> propose(const ConjectureRequest& req) override;
    std::string tag() const override { return "http"; }

  private:
    HttpSourceConfig cfg_;
};

/// Prints a weighted-square list in the response grammar, e.g.
/// "0.5*(x1 - x2)^2 + (x2)^2" (weight-1 squares drop the coefficient).
std::string print_sos_expression(const std::vector<WeightedSquare>& terms);

}  // namespace soscert
