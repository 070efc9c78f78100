// ma1est command line: simulate MA(1) paths, fit the M-estimator, print
// asymptotic variances, run replicated studies, and dump the empirical
// process diagnostics. CSV/JSON only; exit 0 on success, 1 on usage or
// input errors, 2 on numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ma1est/empirical_process.hpp"
#include "ma1est/estimator.hpp"
#include "ma1est/io.hpp"
#include "ma1est/montecarlo.hpp"
#include "ma1est/simulate.hpp"

using namespace ma1est;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct CommonModel {
    std::string dist = "normal";
    std::string psi = "cdf_centered";
};

void emit(const nlohmann::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        out << j.dump(2) << '\n';
    }
}

int cmd_simulate(double alpha, std::size_t n, const std::string& dist_id,
                 std::uint64_t seed, const std::string& out_path) {
    const auto dist = make_distribution(dist_id);
    const auto sample = simulate_ma1(alpha, n, dist, seed);
    if (out_path.empty())
        write_simulation_csv(std::cout, sample);
    else
        write_simulation_csv(out_path, sample);
    return kExitOk;
}

int cmd_estimate(const std::string& in_path, const CommonModel& model,
                 bool have_dist, const SolverOptions& opts,
                 const std::string& out_path) {
    const std::vector<double> u = read_series_csv(in_path);

    std::optional<InnovationDistribution> dist;
    // The cdf-centered score needs a CDF even without an innovation law;
    // the standard normal is the documented default.
    const InnovationDistribution score_basis =
        have_dist ? make_distribution(model.dist) : make_normal();
    if (have_dist) dist = score_basis;
    const ScoreFunction psi = make_score(model.psi, score_basis);

    const EstimateResult result =
        m_estimate(u, psi, opts, dist ? &*dist : nullptr);
    emit(nlohmann::json(result), out_path);
    return result.status == SolverStatus::no_root_in_window ? kExitNumerical
                                                            : kExitOk;
}

int cmd_variance(double alpha, const CommonModel& model, const std::string& out_path) {
    const auto dist = make_distribution(model.dist);
    const auto psi = make_score(model.psi, dist);
    nlohmann::json j{
        {"alpha", alpha},
        {"dist", dist.name},
        {"psi", psi.name},
        {"sigma2_psi", asymptotic_variance(alpha, dist, psi)},
        {"lambda", lambda_alpha(alpha, dist, psi)},
    };
    emit(j, out_path);
    return kExitOk;
}

int cmd_conditions(const CommonModel& model, const std::string& out_path) {
    const auto dist = make_distribution(model.dist);
    const auto psi = make_score(model.psi, dist);
    const ConditionReport report = check_theorem2_conditions(dist, psi);
    emit(nlohmann::json(report), out_path);
    return report.integral_nonzero ? kExitOk : kExitNumerical;
}

int cmd_mc(const std::string& config_path, const std::string& out_json,
           const std::string& out_csv, unsigned threads) {
    const StudyConfig config = load_study_config(config_path);
    const StudyResult result = run_study(config, threads);
    emit(nlohmann::json(result), out_json);
    if (!out_csv.empty()) write_mc_records_csv(out_csv, result);
    return kExitOk;
}

int cmd_ep_check(double alpha, std::size_t n, const std::string& dist_id,
                 std::size_t reps, std::uint64_t seed, double theta_bound,
                 std::size_t tau_points, std::size_t x_points,
                 const std::string& out_prefix) {
    const auto dist = make_distribution(dist_id);
    const auto tau_grid = make_tau_grid(theta_bound, tau_points);
    const auto x_grid = make_x_grid(dist, x_points);

    std::vector<double> sups, slopes;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto sample = simulate_ma1(alpha, n, dist, seed + r);
        const EPDiagnostic diag = theorem1_residual(sample, tau_grid, x_grid);
        sups.push_back(diag.sup_residual);
        slopes.push_back(diag.drift_slope_x0);
        if (!out_prefix.empty())
            write_ep_csv(out_prefix + "_rep" + std::to_string(r) + ".csv", diag);
    }
    std::sort(sups.begin(), sups.end());
    std::sort(slopes.begin(), slopes.end());
    const auto median = [](const std::vector<double>& v) {
        return v.size() % 2 == 1 ? v[v.size() / 2]
                                 : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    };
    nlohmann::json j{
        {"alpha", alpha},
        {"n", n},
        {"replications", reps},
        {"median_sup_residual", median(sups)},
        {"median_drift_slope_x0", median(slopes)},
        {"drift_coeff_theory",
         -dist.density(0.0) * dist.second_moment / (1.0 - alpha * alpha)},
    };
    emit(j, "");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"M-estimation of the MA(1) parameter with bounded-variation "
                 "scores, plus numerical checks of its asymptotics"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate a stationary MA(1) path");
    double sim_alpha = 0.0;
    std::size_t sim_n = 0;
    std::string sim_dist = "normal";
    std::uint64_t sim_seed = 0;
    std::string sim_out;
    sim->add_option("--alpha", sim_alpha, "true parameter, |alpha| < 1")->required();
    sim->add_option("--n", sim_n, "series length")->required();
    sim->add_option("--dist", sim_dist, "normal | student_t[:<nu>] | logistic");
    sim->add_option("--seed", sim_seed, "64-bit seed")->required();
    sim->add_option("--out", sim_out, "output CSV (default stdout)");

    // estimate
    auto* est = app.add_subcommand("estimate", "fit the M-estimator to a series");
    std::string est_in, est_out;
    CommonModel est_model;
    bool est_have_dist = false;
    SolverOptions est_opts;
    est->add_option("--in", est_in, "input CSV (single column, or header with 'u')")
        ->required();
    est->add_option("--psi", est_model.psi, "cdf_centered | sign | identity | huber[:<c>]");
    auto* est_dist_opt =
        est->add_option("--dist", est_model.dist,
                        "innovation law for the theorem variance; omit to use "
                        "the plug-in variance");
    est->add_option("--ci-level", est_opts.ci_level, "confidence level (default 0.95)");
    est->add_option("--scan-bound", est_opts.scan_bound, "|theta| scan bound");
    est->add_option("--window-factor", est_opts.window_factor,
                    "initial window half-width factor / sqrt(n)");
    est->add_option("--grid-step-factor", est_opts.grid_step_factor,
                    "scan grid step factor / sqrt(n)");
    est->add_option("--bisect-tol", est_opts.bisect_tol, "bisection tolerance");
    est->add_option("--out", est_out, "output JSON (default stdout)");

    // variance
    auto* var = app.add_subcommand("variance", "print sigma_Psi^2 and lambda");
    double var_alpha = 0.0;
    CommonModel var_model;
    std::string var_out;
    var->add_option("--alpha", var_alpha, "parameter value")->required();
    var->add_option("--dist", var_model.dist, "innovation law")->required();
    var->add_option("--psi", var_model.psi, "score identifier")->required();
    var->add_option("--out", var_out, "output JSON (default stdout)");

    // conditions
    auto* cond = app.add_subcommand("conditions", "report the normality conditions");
    CommonModel cond_model;
    std::string cond_out;
    cond->add_option("--dist", cond_model.dist, "innovation law")->required();
    cond->add_option("--psi", cond_model.psi, "score identifier")->required();
    cond->add_option("--out", cond_out, "output JSON (default stdout)");

    // mc
    auto* mc = app.add_subcommand("mc", "run a replicated study from a JSON config");
    std::string mc_config, mc_out_json, mc_out_csv;
    unsigned mc_threads = 0;
    mc->add_option("--config", mc_config, "study config JSON")->required();
    mc->add_option("--out-json", mc_out_json, "aggregates JSON (default stdout)");
    mc->add_option("--out-csv", mc_out_csv, "per-replication records CSV");
    mc->add_option("--threads", mc_threads,
                   "worker threads (default: MA1EST_THREADS or hardware)");

    // ep-check
    auto* ep = app.add_subcommand("ep-check",
                                  "empirical-process expansion diagnostics");
    double ep_alpha = 0.5;
    std::size_t ep_n = 1000, ep_reps = 1, ep_tau = 21, ep_x = 201;
    std::string ep_dist = "normal", ep_out;
    std::uint64_t ep_seed = 0;
    double ep_bound = 2.0;
    ep->add_option("--alpha", ep_alpha, "true parameter")->required();
    ep->add_option("--n", ep_n, "series length")->required();
    ep->add_option("--dist", ep_dist, "innovation law");
    ep->add_option("--reps", ep_reps, "replications")->required();
    ep->add_option("--seed", ep_seed, "base seed");
    ep->add_option("--theta-bound", ep_bound, "tau ranges over [-bound, bound]");
    ep->add_option("--tau-points", ep_tau, "tau grid size");
    ep->add_option("--x-points", ep_x, "x grid size");
    ep->add_option("--out", ep_out, "CSV path prefix, one file per replication");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_alpha, sim_n, sim_dist, sim_seed, sim_out);
        if (est->parsed()) {
            est_have_dist = est_dist_opt->count() > 0;
            return cmd_estimate(est_in, est_model, est_have_dist, est_opts, est_out);
        }
        if (var->parsed()) return cmd_variance(var_alpha, var_model, var_out);
        if (cond->parsed()) return cmd_conditions(cond_model, cond_out);
        if (mc->parsed()) return cmd_mc(mc_config, mc_out_json, mc_out_csv, mc_threads);
        if (ep->parsed())
            return cmd_ep_check(ep_alpha, ep_n, ep_dist, ep_reps, ep_seed, ep_bound,
                                ep_tau, ep_x, ep_out);
    } catch (const CsvError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const StudyAbort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
