#include "ma1est/residuals.hpp"

#include <cmath>
#include <stdexcept>

namespace ma1est {

namespace {

void require_nonempty(const std::vector<double>& u) {
    if (u.empty())
        throw std::invalid_argument("residual filter: empty input series");
}

} // namespace

std::vector<double> residual_filter(const std::vector<double>& u, double theta) {
    require_nonempty(u);
    std::vector<double> eps(u.size());
    double prev = 0.0;  // eps_0(theta) = 0
    for (std::size_t k = 0; k < u.size(); ++k) {
        prev = u[k] + theta * prev;
        eps[k] = prev;
    }
    return eps;
}

std::vector<double> residual_derivative(const std::vector<double>& u, double theta) {
    require_nonempty(u);
    std::vector<double> deps(u.size());
    double eps_prev = 0.0;
    double d_prev = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double d = eps_prev + theta * d_prev;
        deps[k] = d;
        eps_prev = u[k] + theta * eps_prev;
        d_prev = d;
    }
    return deps;
}

std::vector<double> residual_second_derivative(const std::vector<double>& u,
                                               double theta) {
    require_nonempty(u);
    std::vector<double> d2(u.size());
    double eps_prev = 0.0;
    double d_prev = 0.0;
    double s_prev = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double s = 2.0 * d_prev + theta * s_prev;
        const double d = eps_prev + theta * d_prev;
        d2[k] = s;
        eps_prev = u[k] + theta * eps_prev;
        d_prev = d;
        s_prev = s;
    }
    return d2;
}

ResidualPath residual_path(const std::vector<double>& u, double theta) {
    require_nonempty(u);
    ResidualPath path;
    path.theta = theta;
    path.unstable = std::fabs(theta) >= 1.0;
    path.eps.resize(u.size());
    path.deps.resize(u.size());
    path.d2eps.resize(u.size());
    double eps_prev = 0.0;
    double d_prev = 0.0;
    double s_prev = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double s = 2.0 * d_prev + theta * s_prev;
        const double d = eps_prev + theta * d_prev;
        const double e = u[k] + theta * eps_prev;
        path.eps[k] = e;
        path.deps[k] = d;
        path.d2eps[k] = s;
        eps_prev = e;
        d_prev = d;
        s_prev = s;
    }
    return path;
}

} // namespace ma1est
