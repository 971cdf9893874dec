#include "soscert/reward.hpp"

#include <algorithm>
#include <set>

#include "soscert/conjecture.hpp"

namespace soscert {

double accuracy_reward(const Polynomial& f, const FloatPolynomial& fhat, double alpha) {
    double dist = coeff_l2_distance(f, fhat).to_double();
    return 1.0 / (1.0 + alpha * dist);
}

double format_reward(const std::string& raw_text, int nvars) {
    return parse_sos_response(raw_text, nvars).ok() ? 1.0 : 0.0;
}

namespace {

std::set<Monomial, GradedLexDesc> thresholded_support(const FloatPolynomial& p, double tau) {
    std::set<Monomial, GradedLexDesc> s;
    for (auto& m : support(p, tau)) s.insert(m);
    return s;
}

}  // namespace

double sdr(const Polynomial& f, const FloatPolynomial& fhat, double tau_coeff) {
    if (f.is_zero()) throw std::domain_error("sdr: undefined for the zero polynomial");
    auto hat = thresholded_support(fhat, tau_coeff);
    std::size_t n_req = f.term_count();
    std::size_t n_miss = 0;
    for (auto& [m, c] : f.terms())
        if (hat.find(m) == hat.end()) ++n_miss;
    std::size_t n_spur = 0;
    for (auto& m : hat)
        if (f.terms().find(m) == f.terms().end()) ++n_spur;
    return static_cast<double>(n_miss + n_spur) / static_cast<double>(n_req);
}

std::pair<double, double> structure_penalty(const Polynomial& f, const FloatPolynomial& fhat,
                                            const RewardConfig& cfg) {
    double p_soft = 0.0;
    if (!f.is_zero())
        p_soft = cfg.lambda_soft * std::min(sdr(f, fhat, cfg.tau_coeff), cfg.rho_max);

    // hard violation: degree blow-up or variables outside f's set, judged on
    // the thresholded support of the conjecture
    auto hat = thresholded_support(fhat, cfg.tau_coeff);
    std::uint32_t hat_deg = 0;
    std::set<int> hat_vars;
    for (auto& m : hat) {
        hat_deg = std::max(hat_deg, m.degree());
        for (std::size_t v = 0; v < m.exps.size(); ++v)
            if (m.exps[v]) hat_vars.insert(static_cast<int>(v) + 1);
    }
    auto f_vars = f.variables_used();
    bool hard = hat_deg > f.total_degree() ||
                !std::includes(f_vars.begin(), f_vars.end(), hat_vars.begin(), hat_vars.end());
    return {p_soft, hard ? cfg.c_hard : 0.0};
}

RewardBreakdown total_reward(const Polynomial& f, const std::string& raw_text,
                             const RewardConfig& cfg) {
    RewardBreakdown b;
    SosParseResult parsed = parse_sos_response(raw_text, f.nvars());
    FloatPolynomial fhat(f.nvars());  // unparseable responses score against zero
    if (parsed.ok()) {
        b.r_fmt = 1.0;
        fhat = expand_weighted_squares_float(parsed.terms, f.nvars(), 128);
    }
    b.r_acc = accuracy_reward(f, fhat, cfg.alpha);
    if (!f.is_zero()) b.sdr = sdr(f, fhat, cfg.tau_coeff);
    auto [p_soft, p_hard] = structure_penalty(f, fhat, cfg);
    b.p_soft = p_soft;
    b.p_hard = p_hard;
    b.total = cfg.w_acc * b.r_acc + cfg.w_fmt * b.r_fmt - (b.p_soft + b.p_hard);
    return b;
}

}  // namespace soscert
