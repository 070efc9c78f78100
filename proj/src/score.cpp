#include "ma1est/score.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ma1est/quadrature.hpp"

namespace ma1est {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Tail mass defining the quadrature domain. Tighter than the grid default
// so that unbounded integrands (identity score) keep the full 1e-9 budget.
constexpr double kQuadTail = 1e-14;
constexpr double kQuadTol = 1e-10;

} // namespace

bool ScoreFunction::has_finite_variation() const {
    return std::isfinite(total_variation);
}

double ScoreFunction::ac_part(double x) const {
    double jumped = 0.0;
    for (const ScoreJump& j : jumps)
        if (j.location <= x) jumped += j.size;
    return eval(x) - jumped;
}

ScoreFunction make_cdf_centered_score(const InnovationDistribution& f) {
    ScoreFunction s;
    s.name = "cdf_centered(" + f.name + ")";
    const auto cdf = f.cdf;
    s.eval = [cdf](double x) { return cdf(x) - 0.5; };
    s.is_continuous = true;
    s.ac_derivative = f.density;
    s.total_variation = 1.0;
    return s;
}

ScoreFunction make_sign_score() {
    ScoreFunction s;
    s.name = "sign";
    s.eval = [](double x) {
        if (x < 0.0) return -0.5;
        if (x > 0.0) return 0.5;
        return 0.0;
    };
    s.is_continuous = false;
    s.jumps = {{0.0, 1.0}};
    s.total_variation = 1.0;
    s.breakpoints = {0.0};
    return s;
}

ScoreFunction make_identity_score() {
    ScoreFunction s;
    s.name = "identity";
    s.eval = [](double x) { return x; };
    s.is_continuous = true;
    s.ac_derivative = [](double) { return 1.0; };
    s.total_variation = kInf;
    return s;
}

ScoreFunction make_huber_score(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("huber score: need c > 0");
    ScoreFunction s;
    s.name = "huber:" + std::to_string(c);
    while (s.name.find('.') != std::string::npos &&
           (s.name.back() == '0' || s.name.back() == '.')) {
        const bool dot = s.name.back() == '.';
        s.name.pop_back();
        if (dot) break;
    }
    s.eval = [c](double x) { return std::clamp(x, -c, c); };
    s.is_continuous = true;
    s.ac_derivative = [c](double x) { return std::fabs(x) < c ? 1.0 : 0.0; };
    s.total_variation = 2.0 * c;
    s.breakpoints = {-c, c};
    return s;
}

ScoreFunction make_score(const std::string& id, const InnovationDistribution& f) {
    if (id == "cdf_centered") return make_cdf_centered_score(f);
    if (id == "sign") return make_sign_score();
    if (id == "identity") return make_identity_score();
    if (id == "huber") return make_huber_score();
    const std::string prefix = "huber:";
    if (id.rfind(prefix, 0) == 0) {
        const std::string arg = id.substr(prefix.size());
        std::size_t pos = 0;
        double c = 0.0;
        try {
            c = std::stod(arg, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("make_score: bad clip constant in '" + id + "'");
        }
        if (pos != arg.size())
            throw std::invalid_argument("make_score: bad clip constant in '" + id + "'");
        return make_huber_score(c);
    }
    throw std::invalid_argument("make_score: unknown identifier '" + id +
                                "' (expected cdf_centered, sign, identity, huber[:<c>])");
}

double integral_g_dpsi(const InnovationDistribution& dist, const ScoreFunction& psi) {
    double value = 0.0;
    for (const ScoreJump& j : psi.jumps) value += dist.density(j.location) * j.size;
    if (psi.ac_derivative) {
        const auto [lo, hi] = dist.effective_support(kQuadTail);
        const auto g = dist.density;
        const auto dpsi = psi.ac_derivative;
        value += integrate_segmented(
                     [&g, &dpsi](double x) { return g(x) * dpsi(x); }, lo, hi,
                     psi.breakpoints, kQuadTol)
                     .value;
    }
    return value;
}

double e_psi_squared(const InnovationDistribution& dist, const ScoreFunction& psi) {
    const auto [lo, hi] = dist.effective_support(kQuadTail);
    const auto g = dist.density;
    const auto& f = psi.eval;
    return integrate_segmented(
               [&g, &f](double x) {
                   const double p = f(x);
                   return p * p * g(x);
               },
               lo, hi, psi.breakpoints, kQuadTol)
        .value;
}

double e_psi(const InnovationDistribution& dist, const ScoreFunction& psi) {
    const auto [lo, hi] = dist.effective_support(kQuadTail);
    const auto g = dist.density;
    const auto& f = psi.eval;
    return integrate_segmented([&g, &f](double x) { return f(x) * g(x); }, lo, hi,
                               psi.breakpoints, kQuadTol)
        .value;
}

bool ConditionReport::required_pass() const {
    return eighth_moment_finite && density_ok && psi_variation_finite &&
           integral_nonzero && psi_centered;
}

std::vector<std::string> ConditionReport::warnings() const {
    std::vector<std::string> w;
    if (!eighth_moment_finite) w.push_back("E eps^8 is not finite");
    if (!density_ok) w.push_back("density conditions violated (positivity, tails, or sup|g'|)");
    if (!psi_variation_finite) w.push_back("score has unbounded total variation");
    if (!integral_nonzero) w.push_back("int g dPsi vanishes; asymptotic variance undefined");
    if (!psi_centered) w.push_back("E Psi(eps_1) differs from zero");
    if (!psi_continuous) w.push_back("score is discontinuous; root existence clause not covered");
    return w;
}

ConditionReport check_theorem2_conditions(const InnovationDistribution& dist,
                                          const ScoreFunction& psi) {
    ConditionReport r;
    r.eighth_moment_finite = dist.has_finite_eighth_moment();

    const auto [lo, hi] = dist.effective_support(1e-10);
    bool positive = true;
    for (int i = 0; i <= 64; ++i) {
        const double x = lo + (hi - lo) * i / 64.0;
        if (!(dist.density(x) > 0.0)) positive = false;
    }
    const bool tails_vanish = dist.density(lo) < 1e-6 && dist.density(hi) < 1e-6;
    r.density_ok = positive && tails_vanish &&
                   std::isfinite(dist.sup_abs_density_derivative);

    r.psi_variation_finite = psi.has_finite_variation();
    r.psi_continuous = psi.is_continuous;

    // Computed even under unbounded variation: the functionals can still be
    // finite (the identity score) and the report should show them.
    r.integral_value = integral_g_dpsi(dist, psi);
    r.e_psi_value = e_psi(dist, psi);
    r.integral_nonzero = std::fabs(r.integral_value) > 1e-12;
    r.psi_centered = std::fabs(r.e_psi_value) < 1e-8;
    return r;
}

} // namespace ma1est
