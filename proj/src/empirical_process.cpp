#include "ma1est/empirical_process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ma1est/residuals.hpp"

namespace ma1est {

namespace {

void require_sorted(const std::vector<double>& grid) {
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("x_grid must be sorted ascending");
}

// Weighted empirical CDF as sorted jump points and cumulative weights:
// value at x is prefix[last point <= x] / n.
struct StepProcess {
    std::vector<double> points;
    std::vector<double> prefix;  // cumulative weights, same length
    double n = 0.0;

    StepProcess(std::vector<double> pts, const std::vector<double>& weights_by_pt)
        : points(std::move(pts)), prefix(weights_by_pt), n(double(points.size())) {
        double acc = 0.0;
        for (double& w : prefix) {
            acc += w;
            w = acc;
        }
    }

    double value(double x) const {
        const auto it = std::upper_bound(points.begin(), points.end(), x);
        if (it == points.begin()) return 0.0;
        return prefix[std::size_t(it - points.begin()) - 1] / n;
    }

    // One pass over a sorted grid.
    std::vector<double> values(const std::vector<double>& grid) const {
        std::vector<double> out(grid.size());
        std::size_t idx = 0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            while (idx < points.size() && points[idx] <= grid[j]) ++idx;
            out[j] = idx == 0 ? 0.0 : prefix[idx - 1] / n;
        }
        return out;
    }
};

StepProcess make_step_process(const std::vector<double>& locations,
                              const std::vector<double>& weights) {
    std::vector<std::size_t> order(locations.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&locations](std::size_t a, std::size_t b) {
        return locations[a] < locations[b];
    });
    std::vector<double> pts(locations.size());
    std::vector<double> w(locations.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        pts[i] = locations[order[i]];
        w[i] = weights[order[i]];
    }
    return StepProcess(std::move(pts), w);
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double xm = 0.0;
    for (double v : x) xm += v;
    xm /= double(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - xm) * y[i];
        sxx += (x[i] - xm) * (x[i] - xm);
    }
    return sxy / sxx;
}

} // namespace

std::vector<double> weighted_empirical(const std::vector<double>& u, double theta,
                                       const std::vector<double>& x_grid) {
    require_sorted(x_grid);
    const ResidualPath path = residual_path(u, theta);
    return make_step_process(path.eps, path.deps).values(x_grid);
}

std::vector<double> weighted_empirical_true(const TimeSeriesSample& sample,
                                            const std::vector<double>& x_grid) {
    require_sorted(x_grid);
    if (!sample.innovations || !sample.alpha_true)
        throw std::invalid_argument(
            "weighted_empirical_true: sample carries no true innovations");
    const std::vector<double>& eps_all = *sample.innovations;  // eps_0..eps_n
    const std::vector<double> deps = residual_derivative(sample.u, *sample.alpha_true);
    const std::vector<double> eps_true(eps_all.begin() + 1, eps_all.end());
    return make_step_process(eps_true, deps).values(x_grid);
}

EPDiagnostic theorem1_residual(const TimeSeriesSample& sample,
                               const std::vector<double>& tau_grid,
                               const std::vector<double>& x_grid,
                               bool include_residual_points) {
    require_sorted(x_grid);
    if (!sample.innovations || !sample.alpha_true || !sample.distribution)
        throw std::invalid_argument(
            "theorem1_residual: sample must be simulated (innovations, alpha, law)");

    const double alpha = *sample.alpha_true;
    const InnovationDistribution& dist = *sample.distribution;
    const std::size_t n = sample.n();
    const double sqrt_n = std::sqrt(double(n));
    const double drift_scale = dist.second_moment / (1.0 - alpha * alpha);

    const std::vector<double>& eps_all = *sample.innovations;
    const std::vector<double> deps_alpha = residual_derivative(sample.u, alpha);
    const std::vector<double> eps_true(eps_all.begin() + 1, eps_all.end());
    const StepProcess tilde = make_step_process(eps_true, deps_alpha);

    EPDiagnostic diag;
    diag.n = n;
    diag.tau_grid = tau_grid;
    diag.x_grid = x_grid;
    diag.drift_coeff_x0 = -dist.density(0.0) * drift_scale;
    diag.empirical.resize(tau_grid.size());
    diag.drift.resize(tau_grid.size());
    diag.residual.resize(tau_grid.size());

    const std::vector<double> tilde_vals = tilde.values(x_grid);
    std::vector<double> at_zero(tau_grid.size());

    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        const double tau = tau_grid[i];
        const double theta = alpha + tau / sqrt_n;
        const ResidualPath path = residual_path(sample.u, theta);
        const StepProcess proc = make_step_process(path.eps, path.deps);

        const std::vector<double> vals = proc.values(x_grid);
        auto& emp = diag.empirical[i];
        auto& dri = diag.drift[i];
        auto& res = diag.residual[i];
        emp.resize(x_grid.size());
        dri.resize(x_grid.size());
        res.resize(x_grid.size());
        for (std::size_t j = 0; j < x_grid.size(); ++j) {
            emp[j] = sqrt_n * (vals[j] - tilde_vals[j]);
            dri[j] = -tau * dist.density(x_grid[j]) * drift_scale;
            res[j] = std::fabs(emp[j] - dri[j]);
            diag.sup_residual = std::max(diag.sup_residual, res[j]);
        }
        at_zero[i] = sqrt_n * (proc.value(0.0) - tilde.value(0.0));

        if (include_residual_points) {
            // The sup over x of the step difference is attained at jump
            // locations; evaluate there as well.
            for (const auto* pts : {&proc.points, &tilde.points}) {
                for (double x : *pts) {
                    const double e = sqrt_n * (proc.value(x) - tilde.value(x));
                    const double dr = -tau * dist.density(x) * drift_scale;
                    diag.sup_residual =
                        std::max(diag.sup_residual, std::fabs(e - dr));
                }
            }
        }
    }
    if (tau_grid.size() >= 2) diag.drift_slope_x0 = ols_slope(tau_grid, at_zero);
    return diag;
}

std::vector<double> make_tau_grid(double theta_bound, std::size_t points) {
    if (points < 2 || !(theta_bound > 0.0))
        throw std::invalid_argument("make_tau_grid: need points >= 2 and a positive bound");
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = -theta_bound + 2.0 * theta_bound * double(i) / double(points - 1);
    return grid;
}

std::vector<double> make_x_grid(const InnovationDistribution& dist, std::size_t points) {
    if (points < 2)
        throw std::invalid_argument("make_x_grid: need at least two points");
    const double lo = dist.quantile(0.001);
    const double hi = dist.quantile(0.999);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = lo + (hi - lo) * double(i) / double(points - 1);
    return grid;
}

} // namespace ma1est
