#include "ma1est/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ma1est/empirical_process.hpp"
#include "ma1est/simulate.hpp"

namespace ma1est {

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

} // namespace

std::string to_string(StudyKind k) {
    switch (k) {
        case StudyKind::normality: return "normality";
        case StudyKind::ep_convergence: return "ep_convergence";
        case StudyKind::variance_table: return "variance_table";
    }
    return "unknown";
}

StudyKind study_kind_from_string(const std::string& s) {
    if (s == "normality") return StudyKind::normality;
    if (s == "ep_convergence") return StudyKind::ep_convergence;
    if (s == "variance_table") return StudyKind::variance_table;
    throw std::invalid_argument("unknown study kind '" + s + "'");
}

double kolmogorov_p(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j < 100000; ++j) {
        const double term = std::exp(-2.0 * double(j) * double(j) * lambda * lambda);
        if (term < 1e-10) break;
        sum += sign * term;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_statistic(std::vector<double> sample,
                      const std::function<double(double)>& cdf) {
    if (sample.size() < 8)
        throw std::invalid_argument("ks_statistic: need at least 8 observations");
    std::sort(sample.begin(), sample.end());
    const double m = double(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, (double(i) + 1.0) / m - f);  // D+
        d = std::max(d, f - double(i) / m);          // D-
    }
    return {d, kolmogorov_p(std::sqrt(m) * d)};
}

double coverage(const std::vector<ReplicationRecord>& records, double alpha_true) {
    if (records.empty())
        throw std::invalid_argument("coverage: no records");
    std::size_t covered = 0;
    std::size_t valid = 0;
    for (const ReplicationRecord& r : records) {
        if (r.failed) continue;
        ++valid;
        if (r.ci_low <= alpha_true && alpha_true <= r.ci_high) ++covered;
    }
    if (valid == 0) return 0.0;
    return double(covered) / double(valid);
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("MA1EST_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

StudyResult run_study(const StudyConfig& config, unsigned threads) {
    if (config.replications < 1)
        throw std::invalid_argument("run_study: need at least one replication");
    if (config.n_values.empty())
        throw std::invalid_argument("run_study: no sample sizes configured");
    for (std::size_t n : config.n_values)
        if (n < 10) throw std::invalid_argument("run_study: all n must be >= 10");
    if (!(std::fabs(config.alpha) < 1.0))
        throw std::invalid_argument("run_study: need |alpha| < 1");

    const InnovationDistribution dist = make_distribution(config.dist);
    const ScoreFunction psi = make_score(config.psi, dist);
    if (threads == 0) threads = default_thread_count();

    SolverOptions solver = config.solver;
    solver.ci_level = config.ci_level;

    StudyResult result;
    result.config = config;
    const std::size_t reps = config.replications;
    result.records.resize(config.n_values.size() * reps);

    const std::vector<double> tau_grid =
        make_tau_grid(config.theta_bound, config.tau_points);
    const std::vector<double> x_grid = make_x_grid(dist, config.x_points);

    // Task t covers (n index, replication) = (t / reps, t % reps). Each
    // task owns its RNG stream; records land at a fixed index, so the
    // merge order never depends on scheduling.
    const std::size_t total = result.records.size();
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error = nullptr;
    auto task = [&](std::size_t t) {
        const std::size_t n = config.n_values[t / reps];
        const std::size_t rep = t % reps;

        ReplicationRecord rec;
        rec.rep = rep;
        rec.seed = config.base_seed + rep;
        rec.n = n;

        const TimeSeriesSample sample = simulate_ma1(config.alpha, n, dist, rec.seed);
        if (config.kind == StudyKind::ep_convergence) {
            const EPDiagnostic diag = theorem1_residual(sample, tau_grid, x_grid);
            rec.sup_residual = diag.sup_residual;
            rec.drift_slope_x0 = diag.drift_slope_x0;
            rec.status = SolverStatus::converged;
        } else {
            const EstimateResult est = m_estimate(sample.u, psi, solver, &dist);
            rec.status = est.status;
            if (est.status == SolverStatus::no_root_in_window) {
                rec.failed = true;
            } else {
                rec.alpha_hat = est.alpha_hat;
                rec.z = std::sqrt(double(n)) * (est.alpha_hat - config.alpha);
                rec.ci_low = est.ci_low;
                rec.ci_high = est.ci_high;
            }
        }
        result.records[t] = rec;
    };
    auto worker = [&]() {
        try {
            while (true) {
                const std::size_t t = next.fetch_add(1);
                if (t >= total) return;
                task(t);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // Aggregate per sample size, in index order.
    const double sigma2 =
        config.kind == StudyKind::ep_convergence
            ? std::numeric_limits<double>::quiet_NaN()
            : asymptotic_variance(config.alpha, dist, psi);

    for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
        StudyAggregate agg;
        agg.n = config.n_values[ni];
        agg.replications = reps;

        std::vector<double> zs, sups, slopes;
        std::vector<ReplicationRecord> block(
            result.records.begin() + std::ptrdiff_t(ni * reps),
            result.records.begin() + std::ptrdiff_t((ni + 1) * reps));
        for (const ReplicationRecord& r : block) {
            if (r.failed) {
                ++agg.failures;
                continue;
            }
            if (config.kind == StudyKind::ep_convergence) {
                sups.push_back(r.sup_residual);
                slopes.push_back(r.drift_slope_x0);
            } else {
                zs.push_back(r.z);
            }
        }
        if (agg.failures * 5 > reps)
            throw StudyAbort(
                "run_study: more than 20% of replications failed at n = " +
                std::to_string(agg.n) + "; model or score mis-specified");

        if (config.kind == StudyKind::ep_convergence) {
            agg.median_sup_residual = median_of(sups);
            agg.median_drift_slope_x0 = median_of(slopes);
            agg.drift_coeff_theory =
                -dist.density(0.0) * dist.second_moment /
                (1.0 - config.alpha * config.alpha);
        } else {
            agg.sigma2_theory = sigma2;
            const double m = double(zs.size());
            double mean = 0.0;
            for (double z : zs) mean += z;
            mean /= m;
            agg.mean_z = mean;
            if (zs.size() >= 2) {
                double ss = 0.0;
                for (double z : zs) ss += (z - mean) * (z - mean);
                agg.var_z = ss / (m - 1.0);
                agg.var_defined = true;
            }
            agg.coverage_rate = coverage(block, config.alpha);
            if (config.kind == StudyKind::normality && zs.size() >= 8) {
                const double sd = std::sqrt(sigma2);
                const KsResult ks = ks_statistic(
                    zs, [sd](double x) { return normal_cdf(x / sd); });
                agg.ks_d = ks.d;
                agg.ks_p = ks.p_value;
            }
        }
        result.aggregates.push_back(agg);
    }
    return result;
}

} // namespace ma1est
