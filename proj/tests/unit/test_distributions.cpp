#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "ma1est/distributions.hpp"
#include "ma1est/quadrature.hpp"

using namespace ma1est;

namespace {

std::vector<InnovationDistribution> builtin_distributions() {
    std::vector<InnovationDistribution> d;
    d.push_back(make_normal());
    d.push_back(make_student_t(9.0));
    d.push_back(make_logistic());
    return d;
}

// Kolmogorov-Smirnov distance of draws against the distribution's own CDF.
double sampler_ks(const InnovationDistribution& dist, std::uint64_t seed,
                  std::size_t m) {
    SplitMix64 rng(seed);
    std::vector<double> x(m);
    for (double& v : x) v = dist.sample(rng);
    std::sort(x.begin(), x.end());
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double f = dist.cdf(x[i]);
        d = std::max(d, (double(i) + 1.0) / double(m) - f);
        d = std::max(d, f - double(i) / double(m));
    }
    return d;
}

} // namespace

TEST_CASE("density integrates to one and has zero mean") {
    for (const auto& dist : builtin_distributions()) {
        CAPTURE(dist.name);
        const auto [lo, hi] = dist.effective_support();
        CHECK(std::fabs(integrate(dist.density, lo, hi, 1e-10).value - 1.0) < 1e-8);
        const auto xg = [&dist](double x) { return x * dist.density(x); };
        CHECK(std::fabs(integrate(xg, lo, hi, 1e-10).value) < 1e-8);
    }
}

TEST_CASE("cdf and quantile are inverse to each other") {
    for (const auto& dist : builtin_distributions()) {
        CAPTURE(dist.name);
        for (double p : {0.01, 0.5, 0.99}) {
            CHECK(std::fabs(dist.cdf(dist.quantile(p)) - p) < 1e-8);
        }
        // nondecreasing CDF over a coarse sweep
        double prev = 0.0;
        for (int i = -40; i <= 40; ++i) {
            const double c = dist.cdf(0.25 * i);
            CHECK(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("second moments match quadrature, eighth moments are closed form") {
    const auto normal = make_normal();
    const auto t9 = make_student_t(9.0);
    const auto logistic = make_logistic();

    CHECK(normal.second_moment == 1.0);
    CHECK(normal.eighth_moment == 105.0);
    CHECK(t9.second_moment == doctest::Approx(9.0 / 7.0).epsilon(1e-15));
    CHECK(t9.eighth_moment == doctest::Approx(6561.0).epsilon(1e-12));
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(logistic.second_moment == doctest::Approx(pi2 / 3.0).epsilon(1e-15));
    CHECK(logistic.eighth_moment ==
          doctest::Approx(127.0 * pi2 * pi2 * pi2 * pi2 / 15.0).epsilon(1e-12));

    for (const auto& dist : builtin_distributions()) {
        CAPTURE(dist.name);
        const auto [lo, hi] = dist.effective_support(1e-14);
        const auto x2g = [&dist](double x) { return x * x * dist.density(x); };
        CHECK(integrate(x2g, lo, hi, 1e-10).value ==
              doctest::Approx(dist.second_moment).epsilon(1e-8));
    }
}

TEST_CASE("density derivative matches finite differences and stays bounded") {
    for (const auto& dist : builtin_distributions()) {
        CAPTURE(dist.name);
        for (double x : {-3.1, -0.7, 0.0, 0.4, 1.9, 5.0}) {
            const double h = 1e-6;
            const double fd = (dist.density(x + h) - dist.density(x - h)) / (2.0 * h);
            CHECK(dist.density_derivative(x) == doctest::Approx(fd).epsilon(1e-6));
            CHECK(std::fabs(dist.density_derivative(x)) <=
                  dist.sup_abs_density_derivative * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("sampler marginals pass a KS check and are reproducible") {
    for (const auto& dist : builtin_distributions()) {
        CAPTURE(dist.name);
        CHECK(sampler_ks(dist, 91, 100000) < 0.01);

        SplitMix64 a(1234), b(1234);
        for (int i = 0; i < 64; ++i) CHECK(dist.sample(a) == dist.sample(b));
    }
}

TEST_CASE("student t moment flags and rejection") {
    CHECK_THROWS_AS(make_student_t(2.0), std::invalid_argument);
    const auto t5 = make_student_t(5.0);
    CHECK_FALSE(t5.has_finite_eighth_moment());
    CHECK(t5.second_moment == doctest::Approx(5.0 / 3.0));
    CHECK(make_student_t(9.0).has_finite_eighth_moment());
}

TEST_CASE("identifier parsing") {
    CHECK(make_distribution("normal").name == "normal");
    CHECK(make_distribution("logistic").name == "logistic");
    CHECK(make_distribution("student_t").second_moment == doctest::Approx(9.0 / 7.0));
    CHECK(make_distribution("student_t:12").second_moment ==
          doctest::Approx(12.0 / 10.0));
    CHECK_THROWS_AS(make_distribution("cauchy"), std::invalid_argument);
    CHECK_THROWS_AS(make_distribution("student_t:abc"), std::invalid_argument);
}

TEST_CASE("normal quantile hits reference values") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-9));
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}
