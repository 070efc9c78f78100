#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ma1est/estimator.hpp"

namespace ma1est {

enum class StudyKind {
    normality,       // distribution of z = sqrt(n)(alpha_hat - alpha)
    ep_convergence,  // sup-residual of the empirical-process expansion
    variance_table,  // var(z) against the theorem variance per n
};

std::string to_string(StudyKind k);
StudyKind study_kind_from_string(const std::string& s);

struct StudyConfig {
    StudyKind kind = StudyKind::normality;
    double alpha = 0.0;
    std::vector<std::size_t> n_values;
    std::size_t replications = 1;
    std::string dist = "normal";
    std::string psi = "cdf_centered";
    std::uint64_t base_seed = 0;
    double ci_level = 0.95;
    // ep_convergence grids
    double theta_bound = 2.0;
    std::size_t tau_points = 21;
    std::size_t x_points = 201;
    SolverOptions solver;
};

struct ReplicationRecord {
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double alpha_hat = std::numeric_limits<double>::quiet_NaN();
    double z = std::numeric_limits<double>::quiet_NaN();
    double ci_low = std::numeric_limits<double>::quiet_NaN();
    double ci_high = std::numeric_limits<double>::quiet_NaN();
    SolverStatus status = SolverStatus::no_root_in_window;
    double sup_residual = std::numeric_limits<double>::quiet_NaN();
    double drift_slope_x0 = std::numeric_limits<double>::quiet_NaN();
    bool failed = false;
};

struct StudyAggregate {
    std::size_t n = 0;
    std::size_t replications = 0;
    std::size_t failures = 0;
    double mean_z = std::numeric_limits<double>::quiet_NaN();
    double var_z = std::numeric_limits<double>::quiet_NaN();
    bool var_defined = false;
    double ks_d = std::numeric_limits<double>::quiet_NaN();
    double ks_p = std::numeric_limits<double>::quiet_NaN();
    double coverage_rate = std::numeric_limits<double>::quiet_NaN();
    double sigma2_theory = std::numeric_limits<double>::quiet_NaN();
    double median_sup_residual = std::numeric_limits<double>::quiet_NaN();
    double median_drift_slope_x0 = std::numeric_limits<double>::quiet_NaN();
    double drift_coeff_theory = std::numeric_limits<double>::quiet_NaN();
};

struct StudyResult {
    StudyConfig config;
    std::vector<ReplicationRecord> records;   // ordered by (n, rep)
    std::vector<StudyAggregate> aggregates;   // one per n value
};

struct KsResult {
    double d = 0.0;
    double p_value = 1.0;
};

// More than 20% of replications failed to bracket a root: the model or
// score is mis-specified for the data being generated.
struct StudyAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two-sided Kolmogorov-Smirnov statistic of the sample against a
// continuous CDF, with the asymptotic p-value K(sqrt(m) D). Requires at
// least 8 observations.
KsResult ks_statistic(std::vector<double> sample,
                      const std::function<double(double)>& cdf);

// Survival function of the Kolmogorov distribution,
// 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2), terms below 1e-10 dropped.
double kolmogorov_p(double lambda);

// Fraction of non-failed replication intervals containing alpha_true.
double coverage(const std::vector<ReplicationRecord>& records, double alpha_true);

// Run a replicated study. Replication r draws its innovations from seed
// base_seed + r; failed replications are recorded, excluded from the
// aggregates and counted. Results are merged by replication index, so the
// output is bit-identical for any thread count. Aborts (throws) when more
// than 20% of replications fail.
// threads = 0 means the MA1EST_THREADS environment variable, falling back
// to the hardware concurrency.
StudyResult run_study(const StudyConfig& config, unsigned threads = 0);

unsigned default_thread_count();

} // namespace ma1est
