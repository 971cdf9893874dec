#pragma once

#include <string>

#include "soscert/polynomial.hpp"

namespace soscert {

struct RewardConfig {
    double alpha = 0.5;       // accuracy scale
    double w_acc = 0.9;       // w_acc + w_fmt = 1
    double w_fmt = 0.1;
    double lambda_soft = 0.5;
    double rho_max = 2.0;     // soft-penalty cap on the deviation rate
    double c_hard = 0.5;
    double tau_coeff = 1e-5;  // monomial presence threshold
};

struct RewardBreakdown {
    double r_acc = 0.0;  // in (0, 1]
    double r_fmt = 0.0;  // 0 or 1
    double sdr = 0.0;
    double p_soft = 0.0;
    double p_hard = 0.0;
    double total = 0.0;  // w_acc*r_acc + w_fmt*r_fmt - (p_soft + p_hard)
};

/// 1 / (1 + alpha * ||f - fhat||_2). alpha = 0 degenerates to the constant 1.
double accuracy_reward(const Polynomial& f, const FloatPolynomial& fhat, double alpha);

/// 1 iff the text parses as an SOS expression with all weights >= 0.
double format_reward(const std::string& raw_text, int nvars);

/// Structural deviation rate (N_miss + N_spur) / N_req over supports
/// thresholded at tau_coeff. Undefined for a zero target polynomial.
double sdr(const Polynomial& f, const FloatPolynomial& fhat, double tau_coeff);

/// (p_soft, p_hard): soft = lambda * min(SDR, rho_max); hard = c_hard when
/// the conjecture exceeds f's degree or mentions variables outside f.
std::pair<double, double> structure_penalty(const Polynomial& f, const FloatPolynomial& fhat,
                                            const RewardConfig& cfg);

/// Full composition against a raw response text. Unparseable responses get
/// r_fmt = 0 and are scored against the zero polynomial.
RewardBreakdown total_reward(const Polynomial& f, const std::string& raw_text,
                             const RewardConfig& cfg);

}  // namespace soscert
