#include "ma1est/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ma1est {

namespace {

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0';
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_simulation_csv(std::ostream& out, const TimeSeriesSample& sample) {
    out << "i,u,eps_true\n";
    for (std::size_t i = 0; i < sample.n(); ++i) {
        out << (i + 1) << ',' << format_double(sample.u[i]) << ',';
        if (sample.innovations)
            out << format_double((*sample.innovations)[i + 1]);
        out << '\n';
    }
}

void write_simulation_csv(const std::string& path, const TimeSeriesSample& sample) {
    auto out = open_out(path);
    write_simulation_csv(out, sample);
}

std::vector<double> read_series_csv(std::istream& in, const std::string& origin) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    std::size_t u_column = 0;
    bool saw_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_line(line);

        if (line_no == 1) {
            double probe;
            if (!parse_double(fields[0], probe)) {
                // Header row: locate the observation column.
                saw_header = true;
                bool found = fields.size() == 1;
                for (std::size_t c = 0; c < fields.size(); ++c) {
                    if (fields[c] == "u") {
                        u_column = c;
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw CsvError(origin + ": line 1: header has no 'u' column");
                continue;
            }
            if (fields.size() > 1)
                throw CsvError(origin +
                               ": line 1: multi-column file needs a header naming 'u'");
        }

        if (u_column >= fields.size())
            throw CsvError(origin + ": line " + std::to_string(line_no) +
                           ": expected at least " + std::to_string(u_column + 1) +
                           " columns");
        if (!saw_header && fields.size() > 1)
            throw CsvError(origin + ": line " + std::to_string(line_no) +
                           ": expected a single column");
        double v;
        if (!parse_double(fields[u_column], v))
            throw CsvError(origin + ": line " + std::to_string(line_no) +
                           ": cannot parse '" + fields[u_column] + "'");
        values.push_back(v);
    }
    if (values.empty())
        throw CsvError(origin + ": no observations found");
    return values;
}

std::vector<double> read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path + "'");
    return read_series_csv(in, path);
}

void write_mc_records_csv(std::ostream& out, const StudyResult& result) {
    out << "rep,seed,alpha_hat,z,status\n";
    for (const ReplicationRecord& r : result.records) {
        out << r.rep << ',' << r.seed << ',';
        if (!r.failed)
            out << format_double(r.alpha_hat) << ',' << format_double(r.z);
        else
            out << ',';
        out << ',' << to_string(r.status) << '\n';
    }
}

void write_mc_records_csv(const std::string& path, const StudyResult& result) {
    auto out = open_out(path);
    write_mc_records_csv(out, result);
}

void write_ep_csv(std::ostream& out, const EPDiagnostic& diag) {
    out << "n,tau,x,empirical,drift,residual\n";
    for (std::size_t i = 0; i < diag.tau_grid.size(); ++i) {
        for (std::size_t j = 0; j < diag.x_grid.size(); ++j) {
            out << diag.n << ',' << format_double(diag.tau_grid[i]) << ','
                << format_double(diag.x_grid[j]) << ','
                << format_double(diag.empirical[i][j]) << ','
                << format_double(diag.drift[i][j]) << ','
                << format_double(diag.residual[i][j]) << '\n';
        }
    }
}

void write_ep_csv(const std::string& path, const EPDiagnostic& diag) {
    auto out = open_out(path);
    write_ep_csv(out, diag);
}

void to_json(nlohmann::json& j, const EstimateResult& r) {
    j = nlohmann::json{
        {"alpha_hat", finite_or_null(r.alpha_hat)},
        {"pilot", finite_or_null(r.pilot)},
        {"bracket", {finite_or_null(r.bracket_low), finite_or_null(r.bracket_high)}},
        {"objective_at_root", finite_or_null(r.objective_at_root)},
        {"sigma2_psi", finite_or_null(r.sigma2_psi)},
        {"ci", {finite_or_null(r.ci_low), finite_or_null(r.ci_high)}},
        {"ci_level", r.ci_level},
        {"n", r.n},
        {"solver_status", to_string(r.status)},
        {"sign_change_count", r.sign_change_count},
        {"variance_is_plugin", r.variance_is_plugin},
        {"condition_warnings", r.condition_warnings},
    };
}

void to_json(nlohmann::json& j, const ConditionReport& r) {
    j = nlohmann::json{
        {"eighth_moment_finite", r.eighth_moment_finite},
        {"density_ok", r.density_ok},
        {"psi_variation_finite", r.psi_variation_finite},
        {"integral_g_dpsi_nonzero", r.integral_nonzero},
        {"psi_centered", r.psi_centered},
        {"psi_continuous", r.psi_continuous},
        {"integral_g_dpsi", finite_or_null(r.integral_value)},
        {"e_psi", finite_or_null(r.e_psi_value)},
        {"required_pass", r.required_pass()},
        {"warnings", r.warnings()},
    };
}

void to_json(nlohmann::json& j, const StudyAggregate& a) {
    j = nlohmann::json{
        {"n", a.n},
        {"replications", a.replications},
        {"failures", a.failures},
        {"mean_z", finite_or_null(a.mean_z)},
        {"var_z", finite_or_null(a.var_z)},
        {"var_defined", a.var_defined},
        {"ks_d", finite_or_null(a.ks_d)},
        {"ks_p", finite_or_null(a.ks_p)},
        {"coverage", finite_or_null(a.coverage_rate)},
        {"sigma2_theory", finite_or_null(a.sigma2_theory)},
        {"median_sup_residual", finite_or_null(a.median_sup_residual)},
        {"median_drift_slope_x0", finite_or_null(a.median_drift_slope_x0)},
        {"drift_coeff_theory", finite_or_null(a.drift_coeff_theory)},
    };
}

void to_json(nlohmann::json& j, const StudyConfig& c) {
    j = nlohmann::json{
        {"study_kind", to_string(c.kind)},
        {"alpha", c.alpha},
        {"n_values", c.n_values},
        {"replications", c.replications},
        {"dist", c.dist},
        {"psi", c.psi},
        {"base_seed", c.base_seed},
        {"ci_level", c.ci_level},
        {"theta_bound", c.theta_bound},
        {"tau_points", c.tau_points},
        {"x_points", c.x_points},
        {"solver",
         {{"window_factor", c.solver.window_factor},
          {"grid_step_factor", c.solver.grid_step_factor},
          {"min_grid_step", c.solver.min_grid_step},
          {"scan_bound", c.solver.scan_bound},
          {"bisect_tol", c.solver.bisect_tol},
          {"objective_tol", c.solver.objective_tol}}},
    };
}

void to_json(nlohmann::json& j, const StudyResult& r) {
    j = nlohmann::json{
        {"config", r.config},
        {"aggregates", r.aggregates},
    };
}

StudyConfig study_config_from_json(const nlohmann::json& j) {
    StudyConfig c;
    c.kind = study_kind_from_string(j.value("study_kind", "normality"));
    c.alpha = j.at("alpha").get<double>();
    if (j.contains("n_values"))
        c.n_values = j.at("n_values").get<std::vector<std::size_t>>();
    else if (j.contains("n"))
        c.n_values = {j.at("n").get<std::size_t>()};
    c.replications = j.at("replications").get<std::size_t>();
    c.dist = j.value("dist", std::string("normal"));
    c.psi = j.value("psi", std::string("cdf_centered"));
    c.base_seed = j.value("base_seed", std::uint64_t{0});
    c.ci_level = j.value("ci_level", 0.95);
    c.theta_bound = j.value("theta_bound", 2.0);
    c.tau_points = j.value("tau_points", std::size_t{21});
    c.x_points = j.value("x_points", std::size_t{201});
    if (j.contains("solver")) {
        const nlohmann::json& s = j.at("solver");
        c.solver.window_factor = s.value("window_factor", c.solver.window_factor);
        c.solver.grid_step_factor =
            s.value("grid_step_factor", c.solver.grid_step_factor);
        c.solver.min_grid_step = s.value("min_grid_step", c.solver.min_grid_step);
        c.solver.scan_bound = s.value("scan_bound", c.solver.scan_bound);
        c.solver.bisect_tol = s.value("bisect_tol", c.solver.bisect_tol);
        c.solver.objective_tol = s.value("objective_tol", c.solver.objective_tol);
    }
    return c;
}

StudyConfig load_study_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    nlohmann::json j;
    in >> j;
    return study_config_from_json(j);
}

} // namespace ma1est
