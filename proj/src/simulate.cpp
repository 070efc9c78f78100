#include "ma1est/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace ma1est {

namespace {

void require_invertible(double alpha) {
    if (!(std::fabs(alpha) < 1.0))
        throw std::invalid_argument("MA(1) requires |alpha| < 1");
}

} // namespace

TimeSeriesSample simulate_ma1(double alpha, std::size_t n,
                              const InnovationDistribution& dist,
                              std::uint64_t seed) {
    require_invertible(alpha);
    if (n == 0) throw std::invalid_argument("simulate_ma1: n must be positive");

    SplitMix64 rng(seed);
    std::vector<double> eps(n + 1);
    for (double& e : eps) e = dist.sample(rng);

    TimeSeriesSample sample;
    sample.u.resize(n);
    for (std::size_t i = 1; i <= n; ++i)
        sample.u[i - 1] = eps[i] - alpha * eps[i - 1];
    sample.innovations = std::move(eps);
    sample.alpha_true = alpha;
    sample.seed = seed;
    sample.distribution = std::make_shared<InnovationDistribution>(dist);
    return sample;
}

TimeSeriesSample make_sample_from_innovations(double alpha,
                                              const std::vector<double>& innovations) {
    require_invertible(alpha);
    if (innovations.size() < 2)
        throw std::invalid_argument(
            "make_sample_from_innovations: need eps_0..eps_n, at least two values");

    TimeSeriesSample sample;
    const std::size_t n = innovations.size() - 1;
    sample.u.resize(n);
    for (std::size_t i = 1; i <= n; ++i)
        sample.u[i - 1] = innovations[i] - alpha * innovations[i - 1];
    sample.innovations = innovations;
    sample.alpha_true = alpha;
    return sample;
}

double theoretical_lag1_autocorr(double alpha) {
    require_invertible(alpha);
    return -alpha / (1.0 + alpha * alpha);
}

} // namespace ma1est
