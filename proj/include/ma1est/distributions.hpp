#pragma once

#include <functional>
#include <string>
#include <utility>

#include "ma1est/rng.hpp"

namespace ma1est {

// Innovation law of the moving-average model: the density g, its
// derivative, the distribution function G, the quantile, and the moments
// entering the asymptotic variance. Moments are closed-form constants,
// never quadrature estimates. Sampling is by quantile inversion of a
// SplitMix64 uniform, which makes draws reproducible across platforms.
struct InnovationDistribution {
    std::string name;
    std::function<double(double)> density;             // g
    std::function<double(double)> density_derivative;  // g'
    std::function<double(double)> cdf;                 // G
    std::function<double(double)> quantile;            // G^{-1} on (0,1)
    double second_moment = 0.0;                        // E eps^2
    double eighth_moment = 0.0;                        // E eps^8, +inf if divergent
    double sup_abs_density_derivative = 0.0;           // finite bound on sup |g'|

    double sample(SplitMix64& rng) const { return quantile(rng.uniform01()); }

    bool has_finite_eighth_moment() const;

    // [quantile(tail), quantile(1-tail)], the working domain for quadrature
    // and diagnostic grids.
    std::pair<double, double> effective_support(double tail_mass = 1e-10) const;
};

InnovationDistribution make_normal();
// Standard Student-t, nu > 2 (finite variance). The eighth moment is
// finite only for nu > 8; smaller nu is accepted but flagged infinite.
InnovationDistribution make_student_t(double nu);
InnovationDistribution make_logistic();

// Parse a distribution identifier: "normal" | "student_t[:<nu>]" |
// "logistic". The Student-t default is nu = 9, the smallest shipped
// integer order with all theorem moments finite.
InnovationDistribution make_distribution(const std::string& id);

// Scalar special functions shared across modules.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);

} // namespace ma1est
