#pragma once

#include <vector>

namespace ma1est {

// Residuals of the inversion filter and their first two derivatives in
// theta, all length n with element k-1 holding the value for eps_k:
//   eps_k(theta)   = u_k + theta * eps_{k-1}(theta),        eps_0 = 0
//   deps_k(theta)  = eps_{k-1}(theta) + theta * deps_{k-1},  deps_1 = 0
//   d2eps_k(theta) = 2 * deps_{k-1} + theta * d2eps_{k-1},   d2eps_1 = d2eps_2 = 0
struct ResidualPath {
    double theta = 0.0;
    std::vector<double> eps;
    std::vector<double> deps;
    std::vector<double> d2eps;
    // |theta| >= 1: the filter is outside the invertibility region and the
    // closed-form expansion diverges geometrically. Values are still exact
    // per the recursion.
    bool unstable = false;
};

std::vector<double> residual_filter(const std::vector<double>& u, double theta);
std::vector<double> residual_derivative(const std::vector<double>& u, double theta);
std::vector<double> residual_second_derivative(const std::vector<double>& u, double theta);

// All three vectors in one O(n) pass.
ResidualPath residual_path(const std::vector<double>& u, double theta);

} // namespace ma1est
