#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ma1est/distributions.hpp"

namespace ma1est {

// One series of observations u_1..u_n. For simulated data the generating
// innovations eps_0..eps_n and the true parameter are kept alongside, so
// u[i-1] == innovations[i] - alpha_true * innovations[i-1] exactly.
struct TimeSeriesSample {
    std::vector<double> u;
    std::optional<std::vector<double>> innovations;  // eps_0..eps_n, simulated only
    std::optional<double> alpha_true;
    std::uint64_t seed = 0;
    std::shared_ptr<const InnovationDistribution> distribution;

    std::size_t n() const { return u.size(); }
};

// Simulate a stationary MA(1) path u_i = eps_i - alpha * eps_{i-1} with iid
// innovations drawn from `dist`. Exactly one pre-sample innovation eps_0 is
// drawn; no burn-in is needed. Deterministic given the seed.
TimeSeriesSample simulate_ma1(double alpha, std::size_t n,
                              const InnovationDistribution& dist,
                              std::uint64_t seed);

// Build a sample from caller-supplied innovations eps_0..eps_n (size n+1).
// Used for exact, deterministic tests of the model equation.
TimeSeriesSample make_sample_from_innovations(double alpha,
                                              const std::vector<double>& innovations);

// Lag-1 autocorrelation -alpha / (1 + alpha^2) of the MA(1) process.
double theoretical_lag1_autocorr(double alpha);

} // namespace ma1est
