#include "ma1est/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ma1est/quadrature.hpp"
#include "ma1est/residuals.hpp"

namespace ma1est {

namespace {

double sample_lag1_autocorr(const std::vector<double>& u) {
    const std::size_t n = u.size();
    const double mean = std::accumulate(u.begin(), u.end(), 0.0) / double(n);
    double denom = 0.0;
    for (double v : u) denom += (v - mean) * (v - mean);
    if (denom < 1e-300) return 0.0;  // constant series
    double num = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        num += (u[i] - mean) * (u[i + 1] - mean);
    return num / denom;
}

struct SignChange {
    double lo, hi;   // grid cell bracketing the change
    double f_lo;
};

// Bisect l_n inside [lo, hi] down to the width tolerance. Works for both
// orientations of the sign change.
double bisect(const std::vector<double>& u, const ScoreFunction& psi,
              double lo, double hi, double f_lo, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = objective_ln(u, mid, psi);
        if (f_mid == 0.0) return mid;
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::string to_string(SolverStatus s) {
    switch (s) {
        case SolverStatus::converged: return "converged";
        case SolverStatus::sign_change_crossing: return "sign_change_crossing";
        case SolverStatus::no_root_in_window: return "no_root_in_window";
    }
    return "unknown";
}

double objective_ln(const std::vector<double>& u, double theta,
                    const ScoreFunction& psi) {
    const ResidualPath path = residual_path(u, theta);
    double sum = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
        sum += path.deps[k] * psi.eval(path.eps[k]);
    return sum / double(u.size());
}

double pilot_from_autocorr(double r1) {
    r1 = std::clamp(r1, -0.499, 0.499);
    if (std::fabs(r1) < 1e-12) return 0.0;
    // -theta/(1+theta^2) = r1; the root with |theta| < 1.
    const double theta = (-1.0 + std::sqrt(1.0 - 4.0 * r1 * r1)) / (2.0 * r1);
    return std::clamp(theta, -0.99, 0.99);
}

double pilot_estimate(const std::vector<double>& u) {
    if (u.size() < 10)
        throw std::invalid_argument("pilot_estimate: need at least 10 observations");
    return pilot_from_autocorr(sample_lag1_autocorr(u));
}

double asymptotic_variance(double alpha, const InnovationDistribution& dist,
                           const ScoreFunction& psi) {
    if (!(std::fabs(alpha) < 1.0))
        throw std::invalid_argument("asymptotic_variance: need |alpha| < 1");
    const double integral = integral_g_dpsi(dist, psi);
    if (std::fabs(integral) <= 1e-12)
        throw std::domain_error(
            "asymptotic_variance: int g dPsi vanishes, variance undefined");
    const double num = e_psi_squared(dist, psi);
    return (1.0 - alpha * alpha) * num /
           (integral * integral * dist.second_moment);
}

double lambda_alpha(double alpha, const InnovationDistribution& dist,
                    const ScoreFunction& psi) {
    if (!(std::fabs(alpha) < 1.0))
        throw std::invalid_argument("lambda_alpha: need |alpha| < 1");
    return -integral_g_dpsi(dist, psi) * dist.second_moment /
           (1.0 - alpha * alpha);
}

double plugin_variance(const std::vector<double>& u, double alpha_hat,
                       const ScoreFunction& psi) {
    const std::vector<double> eps = residual_filter(u, alpha_hat);
    const std::size_t n = eps.size();

    double mean_psi2 = 0.0;
    double eps_mean = 0.0;
    for (double e : eps) {
        const double p = psi.eval(e);
        mean_psi2 += p * p;
        eps_mean += e;
    }
    mean_psi2 /= double(n);
    eps_mean /= double(n);
    double eps_var = 0.0;
    for (double e : eps) eps_var += (e - eps_mean) * (e - eps_mean);
    eps_var /= double(n);

    // Silverman bandwidth from sd and IQR of the fitted residuals.
    std::vector<double> sorted(eps);
    std::sort(sorted.begin(), sorted.end());
    const double q1 = sorted[static_cast<std::size_t>(0.25 * double(n - 1))];
    const double q3 = sorted[static_cast<std::size_t>(0.75 * double(n - 1))];
    const double sd = std::sqrt(eps_var);
    double spread = std::min(sd, (q3 - q1) / 1.34);
    if (spread <= 0.0) spread = std::max(sd, 1e-8);
    const double h = 0.9 * spread * std::pow(double(n), -0.2);

    const auto ghat = [&sorted, h, n](double x) {
        double acc = 0.0;
        for (double e : sorted) acc += normal_pdf((x - e) / h);
        return acc / (double(n) * h);
    };

    double integral = 0.0;
    for (const ScoreJump& j : psi.jumps) integral += ghat(j.location) * j.size;
    if (psi.ac_derivative) {
        const double lo = sorted.front() - 8.0 * h;
        const double hi = sorted.back() + 8.0 * h;
        const auto& dpsi = psi.ac_derivative;
        integral += integrate_segmented(
                        [&ghat, &dpsi](double x) { return ghat(x) * dpsi(x); },
                        lo, hi, psi.breakpoints, 1e-8)
                        .value;
    }
    if (std::fabs(integral) <= 1e-12)
        throw std::domain_error(
            "plugin_variance: estimated int g dPsi vanishes, variance undefined");
    return (1.0 - alpha_hat * alpha_hat) * mean_psi2 /
           (integral * integral * eps_var);
}

std::pair<double, double> confidence_interval(const EstimateResult& result,
                                              double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence_interval: level must lie in (0,1)");
    if (!std::isfinite(result.sigma2_psi) || result.n == 0)
        throw std::invalid_argument("confidence_interval: result lacks a variance");
    const double z = normal_quantile(0.5 * (1.0 + level));
    const double hw = z * std::sqrt(result.sigma2_psi / double(result.n));
    return {std::max(result.alpha_hat - hw, -1.0),
            std::min(result.alpha_hat + hw, 1.0)};
}

EstimateResult m_estimate(const std::vector<double>& u, const ScoreFunction& psi,
                          const SolverOptions& opts,
                          const InnovationDistribution* dist) {
    if (u.size() < 10)
        throw std::invalid_argument("m_estimate: need at least 10 observations");

    EstimateResult result;
    result.n = u.size();
    result.ci_level = opts.ci_level;
    result.pilot = pilot_estimate(u);

    const double sqrt_n = std::sqrt(double(u.size()));
    const double step = std::max(opts.grid_step_factor / sqrt_n, opts.min_grid_step);
    const double bound = opts.scan_bound;

    double half_width = opts.window_factor / sqrt_n;
    std::vector<SignChange> changes;
    while (true) {
        const double lo = std::max(result.pilot - half_width, -bound);
        const double hi = std::min(result.pilot + half_width, bound);
        const bool full_window = (lo <= -bound) && (hi >= bound);

        std::vector<double> grid;
        for (double theta = lo; theta < hi; theta += step) grid.push_back(theta);
        grid.push_back(hi);
        std::vector<double> vals(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            vals[i] = objective_ln(u, grid[i], psi);

        changes.clear();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (vals[i] == 0.0) {
                // Exact zero on the grid: degenerate bracket, root known.
                changes.push_back({grid[i], grid[i], 0.0});
            } else if (i + 1 < grid.size() && vals[i + 1] != 0.0 &&
                       (vals[i] < 0.0) != (vals[i + 1] < 0.0)) {
                changes.push_back({grid[i], grid[i + 1], vals[i]});
            }
        }
        if (!changes.empty() || full_window) break;
        half_width *= 2.0;
    }

    if (changes.empty()) {
        result.status = SolverStatus::no_root_in_window;
    } else {
        result.sign_change_count = static_cast<int>(changes.size());
        const SignChange* best = &changes.front();
        double best_dist = std::fabs(0.5 * (best->lo + best->hi) - result.pilot);
        for (const SignChange& c : changes) {
            const double d = std::fabs(0.5 * (c.lo + c.hi) - result.pilot);
            if (d < best_dist) {
                best = &c;
                best_dist = d;
            }
        }
        if (best->lo == best->hi) {
            result.alpha_hat = best->lo;
            result.bracket_low = std::max(best->lo - step, -bound);
            result.bracket_high = std::min(best->hi + step, bound);
        } else {
            result.bracket_low = best->lo;
            result.bracket_high = best->hi;
            result.alpha_hat =
                bisect(u, psi, best->lo, best->hi, best->f_lo, opts.bisect_tol);
        }
        result.objective_at_root = objective_ln(u, result.alpha_hat, psi);
        result.status = psi.is_continuous ? SolverStatus::converged
                                          : SolverStatus::sign_change_crossing;
    }

    if (dist != nullptr) {
        const ConditionReport report = check_theorem2_conditions(*dist, psi);
        result.condition_warnings = report.warnings();
    } else if (!psi.has_finite_variation()) {
        result.condition_warnings.push_back("score has unbounded total variation");
    } else if (!psi.is_continuous) {
        result.condition_warnings.push_back(
            "score is discontinuous; root existence clause not covered");
    }

    if (result.status != SolverStatus::no_root_in_window) {
        if (dist != nullptr) {
            result.sigma2_psi = asymptotic_variance(result.alpha_hat, *dist, psi);
            result.variance_is_plugin = false;
        } else {
            result.sigma2_psi = plugin_variance(u, result.alpha_hat, psi);
            result.variance_is_plugin = true;
        }
        std::tie(result.ci_low, result.ci_high) =
            confidence_interval(result, opts.ci_level);
    }
    return result;
}

double local_objective_slope(const std::vector<double>& u, double alpha,
                             const ScoreFunction& psi,
                             const std::vector<double>& tau_grid) {
    if (tau_grid.size() < 2)
        throw std::invalid_argument("local_objective_slope: need at least two tau values");
    const double sqrt_n = std::sqrt(double(u.size()));
    const double base = objective_ln(u, alpha, psi);

    double tau_mean = 0.0;
    for (double t : tau_grid) tau_mean += t;
    tau_mean /= double(tau_grid.size());

    double sxy = 0.0, sxx = 0.0;
    for (double t : tau_grid) {
        const double y = sqrt_n * (objective_ln(u, alpha + t / sqrt_n, psi) - base);
        sxy += (t - tau_mean) * y;
        sxx += (t - tau_mean) * (t - tau_mean);
    }
    return sxy / sxx;
}

} // namespace ma1est
