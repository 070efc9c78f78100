#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "ma1est/simulate.hpp"

namespace ma1est {

// Numerical check of the uniform expansion of the residual weighted
// empirical process. Row i of each surface corresponds to tau_grid[i],
// column j to x_grid[j]:
//   empirical[i][j] = n^{1/2} [u_n(x_j, alpha + tau_i n^{-1/2}) - tilde_u_n(x_j, alpha)]
//   drift[i][j]     = -tau_i g(x_j) E eps^2 / (1 - alpha^2)
//   residual[i][j]  = |empirical[i][j] - drift[i][j]|
// sup_residual is the maximum of `residual` over both grids.
struct EPDiagnostic {
    std::size_t n = 0;
    std::vector<double> tau_grid;
    std::vector<double> x_grid;
    std::vector<std::vector<double>> empirical;
    std::vector<std::vector<double>> drift;
    std::vector<std::vector<double>> residual;
    double sup_residual = 0.0;
    // Fitted OLS slope over tau of the process at x = 0, against the
    // theoretical drift coefficient -g(0) E eps^2 / (1 - alpha^2).
    double drift_slope_x0 = std::numeric_limits<double>::quiet_NaN();
    double drift_coeff_x0 = std::numeric_limits<double>::quiet_NaN();
};

// u_n(x, theta) = n^{-1} sum_k deps_k(theta) I(eps_k(theta) <= x) for each
// grid point, via one sort of the residuals and a prefix-sum merge.
// x_grid must be sorted ascending.
std::vector<double> weighted_empirical(const std::vector<double>& u, double theta,
                                       const std::vector<double>& x_grid);

// tilde_u_n(x, alpha): same weights deps_k(alpha), indicators on the true
// innovations. Requires a simulated sample.
std::vector<double> weighted_empirical_true(const TimeSeriesSample& sample,
                                            const std::vector<double>& x_grid);

// Fill the full diagnostic. With include_residual_points the sup is also
// taken at every jump location of the two step processes (the sup over x
// is attained there), not just on x_grid.
EPDiagnostic theorem1_residual(const TimeSeriesSample& sample,
                               const std::vector<double>& tau_grid,
                               const std::vector<double>& x_grid,
                               bool include_residual_points = false);

// Default grids: equispaced tau on [-bound, bound]; x spanning the 0.001
// and 0.999 quantiles of the innovation law.
std::vector<double> make_tau_grid(double theta_bound = 2.0, std::size_t points = 21);
std::vector<double> make_x_grid(const InnovationDistribution& dist, std::size_t points = 201);

} // namespace ma1est
