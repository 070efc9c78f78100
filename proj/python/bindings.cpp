#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "ma1est/empirical_process.hpp"
#include "ma1est/estimator.hpp"
#include "ma1est/io.hpp"
#include "ma1est/montecarlo.hpp"
#include "ma1est/residuals.hpp"
#include "ma1est/simulate.hpp"

namespace py = pybind11;
using namespace ma1est;

namespace {

ScoreFunction score_from_id(const std::string& id,
                            const std::optional<InnovationDistribution>& dist) {
    return make_score(id, dist ? *dist : make_normal());
}

} // namespace

PYBIND11_MODULE(_ma1est, m) {
    m.doc() = "M-estimation of the MA(1) parameter with bounded-variation scores";

    py::class_<InnovationDistribution>(m, "Distribution")
        .def_readonly("name", &InnovationDistribution::name)
        .def_readonly("second_moment", &InnovationDistribution::second_moment)
        .def_readonly("eighth_moment", &InnovationDistribution::eighth_moment)
        .def("pdf", [](const InnovationDistribution& d, double x) { return d.density(x); })
        .def("cdf", [](const InnovationDistribution& d, double x) { return d.cdf(x); })
        .def("quantile",
             [](const InnovationDistribution& d, double p) { return d.quantile(p); })
        .def("sample",
             [](const InnovationDistribution& d, std::size_t n, std::uint64_t seed) {
                 SplitMix64 rng(seed);
                 std::vector<double> out(n);
                 for (double& v : out) v = d.sample(rng);
                 return out;
             },
             py::arg("n"), py::arg("seed"))
        .def("__repr__", [](const InnovationDistribution& d) {
            return "Distribution('" + d.name + "')";
        });

    py::class_<ScoreFunction>(m, "Score")
        .def_readonly("name", &ScoreFunction::name)
        .def_readonly("is_continuous", &ScoreFunction::is_continuous)
        .def_readonly("total_variation", &ScoreFunction::total_variation)
        .def("__call__", [](const ScoreFunction& s, double x) { return s(x); })
        .def("__repr__",
             [](const ScoreFunction& s) { return "Score('" + s.name + "')"; });

    py::class_<TimeSeriesSample>(m, "Sample")
        .def_readonly("u", &TimeSeriesSample::u)
        .def_readonly("innovations", &TimeSeriesSample::innovations)
        .def_readonly("alpha_true", &TimeSeriesSample::alpha_true)
        .def_readonly("seed", &TimeSeriesSample::seed)
        .def_property_readonly("n", &TimeSeriesSample::n);

    py::class_<EstimateResult>(m, "EstimateResult")
        .def_readonly("alpha_hat", &EstimateResult::alpha_hat)
        .def_readonly("pilot", &EstimateResult::pilot)
        .def_readonly("sigma2_psi", &EstimateResult::sigma2_psi)
        .def_readonly("ci_low", &EstimateResult::ci_low)
        .def_readonly("ci_high", &EstimateResult::ci_high)
        .def_readonly("ci_level", &EstimateResult::ci_level)
        .def_readonly("n", &EstimateResult::n)
        .def_readonly("sign_change_count", &EstimateResult::sign_change_count)
        .def_readonly("variance_is_plugin", &EstimateResult::variance_is_plugin)
        .def_readonly("condition_warnings", &EstimateResult::condition_warnings)
        .def_property_readonly(
            "status", [](const EstimateResult& r) { return to_string(r.status); })
        .def("to_json",
             [](const EstimateResult& r) { return nlohmann::json(r).dump(); })
        .def("__repr__", [](const EstimateResult& r) {
            return "EstimateResult(alpha_hat=" + format_double(r.alpha_hat) +
                   ", status=" + to_string(r.status) + ")";
        });

    py::class_<EPDiagnostic>(m, "EPDiagnostic")
        .def_readonly("n", &EPDiagnostic::n)
        .def_readonly("tau_grid", &EPDiagnostic::tau_grid)
        .def_readonly("x_grid", &EPDiagnostic::x_grid)
        .def_readonly("empirical", &EPDiagnostic::empirical)
        .def_readonly("drift", &EPDiagnostic::drift)
        .def_readonly("residual", &EPDiagnostic::residual)
        .def_readonly("sup_residual", &EPDiagnostic::sup_residual)
        .def_readonly("drift_slope_x0", &EPDiagnostic::drift_slope_x0)
        .def_readonly("drift_coeff_x0", &EPDiagnostic::drift_coeff_x0);

    m.def("make_distribution", &make_distribution, py::arg("id"),
          "Build an innovation law from 'normal', 'student_t[:<nu>]' or 'logistic'");
    m.def("make_score", &score_from_id, py::arg("id"),
          py::arg("dist") = std::nullopt,
          "Build a score from 'cdf_centered', 'sign', 'identity' or 'huber[:<c>]'; "
          "cdf_centered centers on `dist` (standard normal when omitted)");

    m.def("simulate_ma1",
          [](double alpha, std::size_t n, const std::string& dist, std::uint64_t seed) {
              return simulate_ma1(alpha, n, make_distribution(dist), seed);
          },
          py::arg("alpha"), py::arg("n"), py::arg("dist") = "normal", py::arg("seed") = 0);
    m.def("theoretical_lag1_autocorr", &theoretical_lag1_autocorr, py::arg("alpha"));

    m.def("residual_filter", &residual_filter, py::arg("u"), py::arg("theta"));
    m.def("residual_derivative", &residual_derivative, py::arg("u"), py::arg("theta"));
    m.def("residual_second_derivative", &residual_second_derivative, py::arg("u"),
          py::arg("theta"));

    m.def("objective_ln", &objective_ln, py::arg("u"), py::arg("theta"), py::arg("psi"));
    m.def("pilot_estimate", &pilot_estimate, py::arg("u"));
    m.def("m_estimate",
          [](const std::vector<double>& u, const ScoreFunction& psi,
             const std::optional<InnovationDistribution>& dist, double ci_level,
             double scan_bound) {
              SolverOptions opts;
              opts.ci_level = ci_level;
              opts.scan_bound = scan_bound;
              return m_estimate(u, psi, opts, dist ? &*dist : nullptr);
          },
          py::arg("u"), py::arg("psi"), py::arg("dist") = std::nullopt,
          py::arg("ci_level") = 0.95, py::arg("scan_bound") = 0.999);
    m.def("asymptotic_variance", &asymptotic_variance, py::arg("alpha"),
          py::arg("dist"), py::arg("psi"));
    m.def("lambda_alpha", &lambda_alpha, py::arg("alpha"), py::arg("dist"),
          py::arg("psi"));
    m.def("integral_g_dpsi", &integral_g_dpsi, py::arg("dist"), py::arg("psi"));
    m.def("e_psi_squared", &e_psi_squared, py::arg("dist"), py::arg("psi"));
    m.def("check_theorem2_conditions",
          [](const InnovationDistribution& dist, const ScoreFunction& psi) {
              return nlohmann::json(check_theorem2_conditions(dist, psi)).dump();
          },
          py::arg("dist"), py::arg("psi"),
          "Condition report as a JSON string");
    m.def("local_objective_slope", &local_objective_slope, py::arg("u"),
          py::arg("alpha"), py::arg("psi"), py::arg("tau_grid"));

    m.def("weighted_empirical", &weighted_empirical, py::arg("u"), py::arg("theta"),
          py::arg("x_grid"));
    m.def("weighted_empirical_true", &weighted_empirical_true, py::arg("sample"),
          py::arg("x_grid"));
    m.def("theorem1_residual", &theorem1_residual, py::arg("sample"),
          py::arg("tau_grid"), py::arg("x_grid"),
          py::arg("include_residual_points") = false);
    m.def("make_tau_grid", &make_tau_grid, py::arg("theta_bound") = 2.0,
          py::arg("points") = 21);
    m.def("make_x_grid", &make_x_grid, py::arg("dist"), py::arg("points") = 201);

    m.def("ks_statistic",
          [](std::vector<double> sample, const std::function<double(double)>& cdf) {
              const KsResult r = ks_statistic(std::move(sample), cdf);
              return py::make_tuple(r.d, r.p_value);
          },
          py::arg("sample"), py::arg("cdf"),
          "Two-sided KS statistic and asymptotic p-value against a CDF callable");
    m.def("run_study_json",
          [](const std::string& config_json, unsigned threads) {
              const StudyConfig config =
                  study_config_from_json(nlohmann::json::parse(config_json));
              return nlohmann::json(run_study(config, threads)).dump();
          },
          py::arg("config_json"), py::arg("threads") = 0,
          "Run a replicated study from a JSON config string; returns JSON");

    m.attr("__version__") = "0.1.0";
}
