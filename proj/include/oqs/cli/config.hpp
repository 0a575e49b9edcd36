// config.hpp: scenario configuration files
//
// JSON object model. Complex numbers are [re, im] pairs; matrices are arrays
// of rows. A bare number is accepted wherever a complex entry is expected and
// is read as [value, 0]. Example:
//
//   {
//     "model": {
//       "dim": 2,
//       "hamiltonian": [[[-0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]],
//       "channels": [{"name": "radiative", "rate": 0.3, "operator": [...]}]
//     },
//     "initial_state": {"bloch": [0, 0, -1]},        // or {"density_matrix": [...]}
//     "schedule": {"t_final": 10, "dt": 0.001, "sample_every": 100},
//     "method": "rk4",                               // or "exact"
//     "projections": [{"name": "P0", "matrix": [...]}],
//     "output": "two_level.csv"
//   }

#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oqs/density.hpp"
#include "oqs/evolve.hpp"
#include "oqs/lindblad.hpp"

namespace oqs::cli {

/// Invalid configuration. The message starts with the offending field path.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Method { rk4, exact };

std::string to_string(Method m);
Method parse_method(const std::string& s);

struct NamedMatrix {
    std::string name;
    ComplexMatrix matrix;
};

struct Schedule {
    double t_final = 0.0;
    double dt = 1e-3;
    int sample_every = 1;
};

struct ScenarioConfig {
    ComplexMatrix hamiltonian;
    std::vector<JumpChannel> channels;
    std::variant<ComplexMatrix, BlochState> initial_state;
    Schedule schedule;
    Method method = Method::rk4;
    std::vector<NamedMatrix> projections;
    std::string output;

    Index dim() const { return hamiltonian.rows(); }
    LindbladModel model() const;
    DensityMatrix initial_density() const;
};

/// Parses and validates every field: shapes, Hermiticity of H, nonnegative
/// rates, projections, initial state, schedule. Throws ConfigError.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);

/// Canonical form: every key present, complex entries as [re, im].
/// serialize(parse(serialize(c))) == serialize(c).
nlohmann::json serialize_config(const ScenarioConfig& config);

/// Re-checks the invariants parse_config enforces; used after CLI overrides.
void validate_config(const ScenarioConfig& config);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& field);

/// Unitary for --basis: either a bare matrix or {"unitary": matrix}.
ComplexMatrix load_basis(const std::string& path);

} // namespace oqs::cli
