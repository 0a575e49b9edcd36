// report.hpp: evolution run reports and their CSV form
//
// CSV schema (one row per sample):
//   t,x,y,z,pop:<proj>...,cur:<channel>:<proj>...,trace_err,min_eig
// x,y,z are present only for dim = 2. cur columns iterate channels in model
// order, then projections in config order. Numbers use 17 significant digits
// with '.' as decimal separator, independent of the C locale.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "oqs/cli/config.hpp"

namespace oqs::cli {

struct RunSummary {
    ComplexMatrix final_state;
    ComplexMatrix stationary_estimate;
    std::string method;
    double max_trace_error = 0.0;
    double min_eigenvalue = 0.0;
};

struct RunReport {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    RunSummary summary;
};

/// Locale-independent equivalent of "%.17g".
std::string format_number(double value);

std::vector<std::string> csv_header(const ScenarioConfig& config);

/// Runs the configured method and tabulates every sample.
RunReport run_evolve(const ScenarioConfig& config);

std::string to_csv(const RunReport& report);

nlohmann::json summary_json(const RunReport& report);

/// Unit-trace element of ker L, from the smallest right singular vector of
/// the generator's superoperator.
ComplexMatrix stationary_state(const LindbladModel& model);

} // namespace oqs::cli
