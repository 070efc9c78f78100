#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ma1est/empirical_process.hpp"
#include "ma1est/estimator.hpp"
#include "ma1est/residuals.hpp"
#include "ma1est/simulate.hpp"

using namespace ma1est;

namespace {

// Evaluate U(x) = n^{1/2}[u_n(x, theta) - tilde_u_n(x, alpha)] at one point
// from the two step processes, brute force.
double process_diff(const TimeSeriesSample& s, double theta, double x) {
    const std::size_t n = s.n();
    const ResidualPath path = residual_path(s.u, theta);
    const auto deps_a = residual_derivative(s.u, *s.alpha_true);
    const auto& eps_true = *s.innovations;
    double a = 0.0, b = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (path.eps[k] <= x) a += path.deps[k];
        if (eps_true[k + 1] <= x) b += deps_a[k];
    }
    return std::sqrt(double(n)) * (a - b) / double(n);
}

// Exact Riemann-Stieltjes integral of the step function U against dPsi:
// jump terms plus sum of U * increments of the AC part of Psi across the
// step breakpoints of U.
double stieltjes_U_dpsi(const TimeSeriesSample& s, double theta,
                        const ScoreFunction& psi) {
    const std::size_t n = s.n();
    const ResidualPath path = residual_path(s.u, theta);
    const auto deps_a = residual_derivative(s.u, *s.alpha_true);
    const auto& eps_all = *s.innovations;

    struct Pt {
        double x, w;
    };
    std::vector<Pt> pts;
    pts.reserve(2 * n);
    const double scale = std::sqrt(double(n)) / double(n);
    for (std::size_t k = 0; k < n; ++k) {
        pts.push_back({path.eps[k], scale * path.deps[k]});
        pts.push_back({eps_all[k + 1], -scale * deps_a[k]});
    }
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });

    double value = 0.0;
    // jump part: U evaluated at the score's jump locations
    for (const ScoreJump& j : psi.jumps) {
        double u_at = 0.0;
        for (const Pt& p : pts)
            if (p.x <= j.location) u_at += p.w;
        value += u_at * j.size;
    }
    // AC part: U is constant between breakpoints, so the integral telescopes
    // through Psi_ac increments. U vanishes left of the first point and the
    // last piece is closed at +infinity by psi.ac_part limits via a far point.
    double u_run = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        u_run += pts[i].w;
        const double right =
            i + 1 < pts.size() ? psi.ac_part(pts[i + 1].x) : psi.ac_part(pts[i].x + 50.0);
        value += u_run * (right - psi.ac_part(pts[i].x));
    }
    return value;
}

double l_tilde(const TimeSeriesSample& s, const ScoreFunction& psi) {
    const auto deps = residual_derivative(s.u, *s.alpha_true);
    const auto& eps_all = *s.innovations;
    double acc = 0.0;
    for (std::size_t k = 0; k < s.n(); ++k) acc += deps[k] * psi(eps_all[k + 1]);
    return acc / double(s.n());
}

} // namespace

TEST_CASE("weighted empirical hand values") {
    SUBCASE("two-point example") {
        // deps = [0, 1], eps = [1, 2]; at x = 1.5 only eps_1 counts, weight 0
        const auto v = weighted_empirical({1.0, 2.0}, 0.0, {1.5});
        CHECK(v == std::vector<double>{0.0});
    }
    SUBCASE("grid beyond the data range") {
        const std::vector<double> u{0.3, -1.2, 0.7, 2.0, -0.4};
        const auto path = residual_path(u, 0.4);
        double total = 0.0;
        for (double d : path.deps) total += d;
        const double lo = *std::min_element(path.eps.begin(), path.eps.end());
        const double hi = *std::max_element(path.eps.begin(), path.eps.end());
        const auto v = weighted_empirical(u, 0.4, {lo - 1.0, hi, hi + 5.0});
        CHECK(v[0] == 0.0);
        CHECK(v[1] == doctest::Approx(total / 5.0).epsilon(1e-15));
        CHECK(v[2] == doctest::Approx(total / 5.0).epsilon(1e-15));
    }
    SUBCASE("unsorted grid is rejected") {
        CHECK_THROWS_AS(weighted_empirical({1.0, 2.0}, 0.0, {1.0, 0.5}),
                        std::invalid_argument);
    }
}

TEST_CASE("true-innovation process") {
    const auto normal = make_normal();
    SUBCASE("requires a simulated sample") {
        TimeSeriesSample bare;
        bare.u = {1.0, 2.0, 3.0};
        CHECK_THROWS_AS(weighted_empirical_true(bare, {0.0}), std::invalid_argument);
    }
    SUBCASE("alpha = 0 collapses both processes to the same values") {
        const auto s = simulate_ma1(0.0, 300, normal, 8);
        std::vector<double> grid;
        for (int i = -30; i <= 30; ++i) grid.push_back(0.1 * i);
        CHECK(weighted_empirical(s.u, 0.0, grid) == weighted_empirical_true(s, grid));
    }
    SUBCASE("constant between adjacent order statistics") {
        const auto s = simulate_ma1(0.4, 50, normal, 9);
        std::vector<double> eps(s.innovations->begin() + 1, s.innovations->end());
        std::sort(eps.begin(), eps.end());
        const double a = eps[20], b = eps[21];
        const std::vector<double> grid{a, 0.25 * (3 * a + b), 0.5 * (a + b), b};
        const auto v = weighted_empirical_true(s, grid);
        CHECK(v[0] == v[1]);
        CHECK(v[1] == v[2]);
        CHECK(v[2] != v[3]);
    }
    SUBCASE("mean-zero weights at x = 0 for large n") {
        const auto s = simulate_ma1(0.5, 100000, normal, 10);
        const auto v = weighted_empirical_true(s, {0.0});
        // weights have variance E eps^2/(1-a^2) = 4/3, indicators halve it
        const double sd = std::sqrt((4.0 / 3.0) * 0.5 / 100000.0);
        CHECK(std::fabs(v[0]) < 3.0 * sd);
    }
}

TEST_CASE("positive and negative weight parts recompose the process") {
    const auto normal = make_normal();
    const auto s = simulate_ma1(0.45, 400, normal, 12);
    const auto path = residual_path(s.u, 0.45);
    std::vector<double> grid;
    for (int i = -25; i <= 25; ++i) grid.push_back(0.12 * i);

    const std::size_t n = s.n();
    std::vector<double> plus(n, 0.0), minus(n, 0.0);
    // split the series itself through the weights by scaling trick: evaluate
    // both parts directly against the residual locations
    std::vector<std::pair<double, double>> loc(n);
    for (std::size_t k = 0; k < n; ++k) loc[k] = {path.eps[k], path.deps[k]};
    std::sort(loc.begin(), loc.end());
    const auto full = weighted_empirical(s.u, 0.45, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double p = 0.0, m = 0.0;
        for (const auto& [x, w] : loc) {
            if (x > grid[j]) break;
            if (w > 0.0)
                p += w;
            else
                m += -w;
        }
        CHECK(full[j] == doctest::Approx((p - m) / double(n)).epsilon(1e-12));
    }
}

TEST_CASE("step structure: right continuity at residual points") {
    const auto normal = make_normal();
    const auto s = simulate_ma1(0.3, 60, normal, 13);
    const auto path = residual_path(s.u, 0.3);
    std::vector<double> eps(path.eps);
    std::sort(eps.begin(), eps.end());
    const double x = eps[30];
    const auto v = weighted_empirical(s.u, 0.3, {x - 1e-12, x});
    CHECK(v[0] != v[1]);  // the jump sits exactly at the residual
    const auto w = weighted_empirical(s.u, 0.3, {x, x + 1e-12});
    CHECK(w[0] == w[1]);  // right continuous
}

TEST_CASE("theorem-1 diagnostic surfaces") {
    const auto normal = make_normal();
    const auto s = simulate_ma1(0.5, 2000, normal, 14);
    const auto tau = make_tau_grid(2.0, 21);
    const auto x = make_x_grid(normal, 101);
    const auto diag = theorem1_residual(s, tau, x);

    REQUIRE(diag.tau_grid.size() == 21);
    REQUIRE(diag.x_grid.size() == 101);
    CHECK(diag.n == 2000);
    CHECK(diag.drift_coeff_x0 ==
          doctest::Approx(-normal_pdf(0.0) / 0.75).epsilon(1e-12));

    SUBCASE("tau = 0 row has zero drift and only the truncation effect") {
        const std::size_t mid = 10;  // tau = 0
        CHECK(diag.tau_grid[mid] == 0.0);
        double sup0 = 0.0;
        for (std::size_t j = 0; j < diag.x_grid.size(); ++j) {
            CHECK(diag.drift[mid][j] == 0.0);
            sup0 = std::max(sup0, diag.residual[mid][j]);
        }
        // indicators can disagree only while |alpha^k eps_0| is above the
        // spacing; count those k and bound the row by their total weight
        const auto path = residual_path(s.u, 0.5);
        const auto& eps_all = *s.innovations;
        double bound = 0.0;
        for (std::size_t k = 0; k < s.n(); ++k) {
            if (path.eps[k] != eps_all[k + 1]) {
                const double lo = std::min(path.eps[k], eps_all[k + 1]);
                const double hi = std::max(path.eps[k], eps_all[k + 1]);
                if (hi >= diag.x_grid.front() && lo <= diag.x_grid.back())
                    bound += std::fabs(path.deps[k]);
            }
        }
        bound /= std::sqrt(double(s.n()));
        CHECK(sup0 <= bound + 1e-12);
        CHECK(sup0 < 0.5);
    }

    SUBCASE("surface values agree with the brute-force definition") {
        for (const std::size_t i : {std::size_t{0}, std::size_t{15}}) {
            const double theta = 0.5 + diag.tau_grid[i] / std::sqrt(2000.0);
            for (const std::size_t j : {std::size_t{3}, std::size_t{50}}) {
                CHECK(diag.empirical[i][j] ==
                      doctest::Approx(process_diff(s, theta, diag.x_grid[j]))
                          .epsilon(1e-10));
            }
        }
    }

    SUBCASE("jump-point refinement only increases the sup") {
        const auto exact = theorem1_residual(s, tau, x, true);
        CHECK(exact.sup_residual >= diag.sup_residual);
    }

    SUBCASE("requires innovations") {
        TimeSeriesSample bare;
        bare.u = s.u;
        CHECK_THROWS_AS(theorem1_residual(bare, tau, x), std::invalid_argument);
    }
}

TEST_CASE("stieltjes link between objective differences and the process") {
    const auto normal = make_normal();
    const auto s = simulate_ma1(0.5, 1500, normal, 15);
    const double sqrt_n = std::sqrt(1500.0);
    const double tau = 1.3;
    const double theta = 0.5 + tau / sqrt_n;

    for (const auto& psi : {make_cdf_centered_score(normal), make_sign_score(),
                            make_huber_score(1.345)}) {
        CAPTURE(psi.name);
        const double lhs = sqrt_n * (objective_ln(s.u, theta, psi) - l_tilde(s, psi));

        // exact integration by parts: lhs = U(inf) Psi(inf) - int U dPsi
        const auto path = residual_path(s.u, theta);
        const auto deps_a = residual_derivative(s.u, 0.5);
        double u_inf = 0.0;
        for (std::size_t k = 0; k < s.n(); ++k) u_inf += path.deps[k] - deps_a[k];
        u_inf *= sqrt_n / double(s.n());
        const double psi_inf = psi.ac_part(1e3) + [&psi] {
            double j = 0.0;
            for (const auto& jp : psi.jumps) j += jp.size;
            return j;
        }();

        const double rhs = u_inf * psi_inf - stieltjes_U_dpsi(s, theta, psi);
        CHECK(std::fabs(lhs - rhs) < 1e-8);
        // the boundary term is the asymptotically vanishing piece
        CHECK(std::fabs(u_inf * psi_inf) < 0.5);
    }
}

TEST_CASE("grid builders") {
    const auto tau = make_tau_grid(2.0, 21);
    CHECK(tau.front() == -2.0);
    CHECK(tau.back() == 2.0);
    CHECK(tau[10] == 0.0);
    const auto normal = make_normal();
    const auto x = make_x_grid(normal, 201);
    CHECK(x.size() == 201);
    CHECK(x.front() == doctest::Approx(normal.quantile(0.001)));
    CHECK(x.back() == doctest::Approx(normal.quantile(0.999)));
    CHECK_THROWS_AS(make_tau_grid(0.0, 21), std::invalid_argument);
    CHECK_THROWS_AS(make_x_grid(normal, 1), std::invalid_argument);
}
