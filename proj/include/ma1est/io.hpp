#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ma1est/empirical_process.hpp"
#include "ma1est/montecarlo.hpp"
#include "ma1est/score.hpp"
#include "ma1est/simulate.hpp"

namespace ma1est {

// Reals are written with 17 significant digits (lossless round-trip),
// dot decimal separator, one header row per file.

std::string format_double(double v);

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Header "i,u,eps_true"; one row per observation, i = 1..n.
void write_simulation_csv(std::ostream& out, const TimeSeriesSample& sample);
void write_simulation_csv(const std::string& path, const TimeSeriesSample& sample);

// Read a series of observations. Accepts a single-column file, or a
// delimited file whose header names a "u" column (as written by the
// simulate command). Throws CsvError naming the offending line otherwise.
std::vector<double> read_series_csv(const std::string& path);
std::vector<double> read_series_csv(std::istream& in, const std::string& origin);

// Header "rep,seed,alpha_hat,z,status"; one row per replication.
void write_mc_records_csv(std::ostream& out, const StudyResult& result);
void write_mc_records_csv(const std::string& path, const StudyResult& result);

// Header "n,tau,x,empirical,drift,residual"; long format over both grids.
void write_ep_csv(std::ostream& out, const EPDiagnostic& diag);
void write_ep_csv(const std::string& path, const EPDiagnostic& diag);

// nlohmann ADL serializers.
void to_json(nlohmann::json& j, const EstimateResult& r);
void to_json(nlohmann::json& j, const ConditionReport& r);
void to_json(nlohmann::json& j, const StudyAggregate& a);
void to_json(nlohmann::json& j, const StudyConfig& c);
void to_json(nlohmann::json& j, const StudyResult& r);

StudyConfig study_config_from_json(const nlohmann::json& j);
StudyConfig load_study_config(const std::string& path);

} // namespace ma1est
