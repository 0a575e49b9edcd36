// commands.hpp: CLI subcommand implementations
//
// Each command writes its report to the given stream and returns the process
// exit code: 0 success, 1 verification or validation failure, 2 numeric or
// stability failure. Reports other than CSV are JSON documents.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oqs/cli/config.hpp"

namespace oqs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumeric = 2;

/// Exit code for a library exception.
int exit_code_for(const std::exception& e);

/// Runs the scenario, writes the CSV to csv_path (stdout when empty) and a
/// JSON summary to out.
int cmd_evolve(const ScenarioConfig& config, const std::string& csv_path, std::ostream& out);

/// For every tracked projection and channel: γ·D*(B, P) in the computational
/// basis, plus its components U†JU when a basis is given.
nlohmann::json currents_report(const ScenarioConfig& config,
                               const std::optional<ComplexMatrix>& basis);

/// "transpose" | "identity" with dim, or "semigroup" with a model and t.
nlohmann::json choi_report(const std::string& map_name, Index dim,
                           const std::optional<ScenarioConfig>& config, double t);

/// amplitudes as (re0, im0, re1, im1).
nlohmann::json herald_report(const std::vector<double>& amplitudes);

nlohmann::json semigroup_report(const ScenarioConfig& config, double t);

} // namespace oqs::cli
