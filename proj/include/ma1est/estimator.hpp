#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ma1est/distributions.hpp"
#include "ma1est/score.hpp"

namespace ma1est {

enum class SolverStatus {
    converged,             // bisection closed a sign-change bracket of a continuous objective
    sign_change_crossing,  // step score: crossing point of the cadlag objective
    no_root_in_window,     // objective has constant sign on the whole scan window
};

std::string to_string(SolverStatus s);

struct SolverOptions {
    double window_factor = 5.0;     // initial half-width = window_factor / sqrt(n)
    double grid_step_factor = 0.5;  // grid step = max(grid_step_factor / sqrt(n), min_grid_step)
    double min_grid_step = 1e-4;
    double scan_bound = 0.999;      // |theta| <= scan_bound
    double bisect_tol = 1e-8;
    double objective_tol = 1e-6;    // scaled by (1 + max_k |deps_k|)
    double ci_level = 0.95;
};

struct EstimateResult {
    double alpha_hat = std::numeric_limits<double>::quiet_NaN();
    double pilot = std::numeric_limits<double>::quiet_NaN();
    double bracket_low = std::numeric_limits<double>::quiet_NaN();
    double bracket_high = std::numeric_limits<double>::quiet_NaN();
    double objective_at_root = std::numeric_limits<double>::quiet_NaN();
    double sigma2_psi = std::numeric_limits<double>::quiet_NaN();
    double ci_low = std::numeric_limits<double>::quiet_NaN();
    double ci_high = std::numeric_limits<double>::quiet_NaN();
    double ci_level = 0.95;
    std::size_t n = 0;
    SolverStatus status = SolverStatus::no_root_in_window;
    int sign_change_count = 0;           // > 1 means the root choice was ambiguous
    bool variance_is_plugin = false;
    std::vector<std::string> condition_warnings;
};

// l_n(theta) = n^{-1} sum_k deps_k(theta) Psi(eps_k(theta)).
double objective_ln(const std::vector<double>& u, double theta,
                    const ScoreFunction& psi);

// Method-of-moments start value: solve r1 = -theta/(1+theta^2) for the
// invertible root, with r1 clamped to [-0.499, 0.499] and the result to
// [-0.99, 0.99].
double pilot_from_autocorr(double r1);
double pilot_estimate(const std::vector<double>& u);

// sigma_Psi^2(alpha) = (1 - alpha^2) E Psi^2 / ((int g dPsi)^2 E eps^2).
double asymptotic_variance(double alpha, const InnovationDistribution& dist,
                           const ScoreFunction& psi);

// lambda(alpha) = -int g dPsi * E eps^2 / (1 - alpha^2). Note the local
// slope of n^{1/2} l_n(alpha + tau n^{-1/2}) in tau equals -lambda(alpha).
double lambda_alpha(double alpha, const InnovationDistribution& dist,
                    const ScoreFunction& psi);

// Empirical counterpart of sigma_Psi^2 when the innovation law is unknown:
// sample moments of the fitted residuals and a Gaussian-kernel density
// estimate (Silverman bandwidth) in place of g.
double plugin_variance(const std::vector<double>& u, double alpha_hat,
                       const ScoreFunction& psi);

// alpha_hat +/- z_{(1+level)/2} sqrt(sigma2/n), intersected with (-1, 1).
std::pair<double, double> confidence_interval(const EstimateResult& result,
                                              double level);

// Root search for l_n: expanding window around the pilot, sign-change scan,
// bisection. Among several sign changes the one nearest the pilot wins.
// When `dist` is supplied the variance is the theorem formula at alpha_hat
// and the condition report feeds the warnings; otherwise the plug-in
// variance is used.
EstimateResult m_estimate(const std::vector<double>& u, const ScoreFunction& psi,
                          const SolverOptions& opts = {},
                          const InnovationDistribution* dist = nullptr);

// OLS slope over tau of n^{1/2}[l_n(alpha + tau n^{-1/2}) - l_n(alpha)].
// Converges to -lambda(alpha); diagnostic for the local expansion.
double local_objective_slope(const std::vector<double>& u, double alpha,
                             const ScoreFunction& psi,
                             const std::vector<double>& tau_grid);

} // namespace ma1est
