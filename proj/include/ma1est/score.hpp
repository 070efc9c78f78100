#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ma1est/distributions.hpp"

namespace ma1est {

struct ScoreJump {
    double location;
    double size;
};

// Score function Psi of bounded variation, represented as a finite set of
// jumps plus an absolutely continuous part with derivative ac_derivative.
// Every supported score is such a sum, so Stieltjes integrals against dPsi
// reduce to jump terms plus ordinary integrals.
struct ScoreFunction {
    std::string name;
    std::function<double(double)> eval;
    bool is_continuous = true;
    std::vector<ScoreJump> jumps;                 // empty when continuous
    std::function<double(double)> ac_derivative;  // null when purely discrete
    double total_variation = 0.0;                 // +inf when unbounded
    std::vector<double> breakpoints;              // non-smooth points, used to split quadrature

    double operator()(double x) const { return eval(x); }
    bool has_finite_variation() const;
    // Psi(x) minus the jumps accumulated up to x: the AC component.
    double ac_part(double x) const;
};

// Psi(x) = F(x) - 1/2 for a continuous zero-mean symmetric CDF F.
// Continuous, total variation 1, ac derivative = density of F.
ScoreFunction make_cdf_centered_score(const InnovationDistribution& f);
// Psi(x) = -1/2, 0, +1/2 for x <, =, > 0. Single unit jump at 0.
ScoreFunction make_sign_score();
// Psi(x) = x. Unbounded variation; the Gaussian ML score, kept for
// comparison with least-squares asymptotics.
ScoreFunction make_identity_score();
// Psi(x) = clamp(x, -c, c). Continuous, total variation 2c.
ScoreFunction make_huber_score(double c = 1.345);

// Parse "cdf_centered" | "sign" | "identity" | "huber[:<c>]".
// cdf_centered centers on `f`; pass make_normal() when no innovation law
// is known.
ScoreFunction make_score(const std::string& id, const InnovationDistribution& f);

// Stieltjes integral of the density against dPsi:
//   sum_j g(x_j) * jump_j + integral g(x) psi'(x) dx.
double integral_g_dpsi(const InnovationDistribution& dist, const ScoreFunction& psi);
// E Psi^2(eps_1) by adaptive quadrature.
double e_psi_squared(const InnovationDistribution& dist, const ScoreFunction& psi);
// E Psi(eps_1) by adaptive quadrature (centering check).
double e_psi(const InnovationDistribution& dist, const ScoreFunction& psi);

// Conditions of the normality theorem, reported per item. Estimation
// proceeds on warnings; nothing here is fatal.
struct ConditionReport {
    bool eighth_moment_finite = false;
    bool density_ok = false;           // g > 0 with vanishing tails and bounded g'
    bool psi_variation_finite = false;
    bool integral_nonzero = false;     // |int g dPsi| > 1e-12
    bool psi_centered = false;         // |E Psi(eps_1)| < 1e-8
    bool psi_continuous = false;       // existence clause for the solution root
    double integral_value = 0.0;
    double e_psi_value = 0.0;

    // All conditions the normality statement needs; continuity only enters
    // the existence clause and is reported separately.
    bool required_pass() const;
    std::vector<std::string> warnings() const;
};

ConditionReport check_theorem2_conditions(const InnovationDistribution& dist,
                                          const ScoreFunction& psi);

} // namespace ma1est
