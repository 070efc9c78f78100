#pragma once

#include <functional>
#include <vector>

namespace ma1est {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // accumulated error estimate
    bool converged = true;
};

// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b] to an absolute
// tolerance. Interval budget guards against non-integrable inputs.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-10,
                           int max_intervals = 20000);

// Same, but the domain is pre-split at the given interior breakpoints
// (jump locations or kinks of the integrand). Breakpoints outside (a, b)
// are ignored. The tolerance is shared across segments by length.
QuadratureResult integrate_segmented(const std::function<double(double)>& f,
                                     double a, double b,
                                     const std::vector<double>& breakpoints,
                                     double abs_tol = 1e-10);

} // namespace ma1est
