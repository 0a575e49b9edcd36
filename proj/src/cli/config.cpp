#include "oqs/cli/config.hpp"

#include <cmath>
#include <fstream>

#include "oqs/currents.hpp"

namespace oqs::cli {

using nlohmann::json;

namespace {

Complex complex_from_json(const json& j, const std::string& field)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ConfigError(field + ": expected a number or a [re, im] pair");
}

const json& require_key(const json& obj, const char* key, const std::string& field)
{
    if (!obj.is_object()) throw ConfigError(field + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(field + "." + key + ": missing");
    return *it;
}

double number_field(const json& obj, const char* key, const std::string& field)
{
    const json& v = require_key(obj, key, field);
    if (!v.is_number()) throw ConfigError(field + "." + key + ": expected a number");
    return v.get<double>();
}

// Runs a library check and rewrites any failure as a ConfigError naming the
// field it came from.
template <class F>
auto checked(const std::string& field, F&& f)
{
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

} // namespace

std::string to_string(Method m)
{
    return m == Method::rk4 ? "rk4" : "exact";
}

Method parse_method(const std::string& s)
{
    if (s == "rk4") return Method::rk4;
    if (s == "exact") return Method::exact;
    throw ConfigError("method: expected \"rk4\" or \"exact\", got \"" + s + "\"");
}

json matrix_to_json(const ComplexMatrix& m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& field)
{
    if (!j.is_array() || j.empty()) throw ConfigError(field + ": expected a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) throw ConfigError(field + "[0]: expected a non-empty row");
    const std::size_t cols = j[0].size();
    ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rf = field + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols) {
            throw ConfigError(rf + ": expected a row of " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Index>(r), static_cast<Index>(c)) =
                complex_from_json(j[r][c], rf + "[" + std::to_string(c) + "]");
        }
    }
    if (!m.allFinite()) throw ConfigError(field + ": non-finite entry");
    return m;
}

LindbladModel ScenarioConfig::model() const
{
    return LindbladModel(hamiltonian, channels);
}

DensityMatrix ScenarioConfig::initial_density() const
{
    if (const auto* rho = std::get_if<ComplexMatrix>(&initial_state)) return DensityMatrix(*rho);
    return rho_from_bloch(std::get<BlochState>(initial_state));
}

void validate_config(const ScenarioConfig& c)
{
    const LindbladModel model = checked("model", [&] { return c.model(); });
    if (const auto* b = std::get_if<BlochState>(&c.initial_state); b != nullptr && c.dim() != 2) {
        throw ConfigError("initial_state.bloch: Bloch initial states require dim = 2");
    }
    const DensityMatrix rho0 = checked("initial_state", [&] { return c.initial_density(); });
    if (rho0.dim() != model.dim()) {
        throw ConfigError("initial_state: dimension " + std::to_string(rho0.dim()) +
                          " does not match model dimension " + std::to_string(model.dim()));
    }
    const auto& s = c.schedule;
    if (!std::isfinite(s.t_final) || s.t_final < 0.0) {
        throw ConfigError("schedule.t_final: must be finite and >= 0");
    }
    if (!std::isfinite(s.dt) || s.dt <= 0.0) throw ConfigError("schedule.dt: must be > 0");
    if (s.sample_every < 1) throw ConfigError("schedule.sample_every: must be >= 1");

    for (std::size_t k = 0; k < c.projections.size(); ++k) {
        const std::string field = "projections[" + std::to_string(k) + "]";
        const auto& p = c.projections[k];
        if (p.name.empty()) throw ConfigError(field + ".name: must be non-empty");
        if (p.matrix.rows() != model.dim() || p.matrix.cols() != model.dim()) {
            throw ConfigError(field + ".matrix: expected " + std::to_string(model.dim()) + "x" +
                              std::to_string(model.dim()));
        }
        checked(field + ".matrix", [&] {
            require_projection(p.matrix);
            return 0;
        });
        for (std::size_t q = 0; q < k; ++q) {
            if (c.projections[q].name == p.name) {
                throw ConfigError(field + ".name: duplicate projection name \"" + p.name + "\"");
            }
        }
    }
}

ScenarioConfig parse_config(const json& j)
{
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    ScenarioConfig c;

    const json& model = require_key(j, "model", "config");
    const json& dim_j = require_key(model, "dim", "model");
    if (!dim_j.is_number_integer() || dim_j.get<long>() < 1) {
        throw ConfigError("model.dim: expected a positive integer");
    }
    const Index dim = dim_j.get<Index>();
    c.hamiltonian = matrix_from_json(require_key(model, "hamiltonian", "model"), "model.hamiltonian");
    if (c.hamiltonian.rows() != dim || c.hamiltonian.cols() != dim) {
        throw ConfigError("model.hamiltonian: expected " + std::to_string(dim) + "x" +
                          std::to_string(dim));
    }
    if (!is_hermitian(c.hamiltonian)) throw ConfigError("model.hamiltonian: not Hermitian");

    const auto channels_it = model.find("channels");
    if (channels_it != model.end()) {
        if (!channels_it->is_array()) throw ConfigError("model.channels: expected an array");
        for (std::size_t k = 0; k < channels_it->size(); ++k) {
            const std::string field = "model.channels[" + std::to_string(k) + "]";
            const json& ch = (*channels_it)[k];
            JumpChannel jc;
            jc.op = matrix_from_json(require_key(ch, "operator", field), field + ".operator");
            if (jc.op.rows() != dim || jc.op.cols() != dim) {
                throw ConfigError(field + ".operator: expected " + std::to_string(dim) + "x" +
                                  std::to_string(dim));
            }
            jc.rate = number_field(ch, "rate", field);
            if (!std::isfinite(jc.rate) || jc.rate < 0.0) {
                throw ConfigError(field + ".rate: must be finite and nonnegative");
            }
            if (const auto n = ch.find("name"); n != ch.end()) {
                if (!n->is_string()) throw ConfigError(field + ".name: expected a string");
                jc.name = n->get<std::string>();
            }
            c.channels.push_back(std::move(jc));
        }
    }

    const json& init = require_key(j, "initial_state", "config");
    if (!init.is_object()) throw ConfigError("initial_state: expected an object");
    const bool has_rho = init.contains("density_matrix");
    const bool has_bloch = init.contains("bloch");
    if (has_rho == has_bloch) {
        throw ConfigError("initial_state: give exactly one of \"density_matrix\" or \"bloch\"");
    }
    if (has_rho) {
        c.initial_state = matrix_from_json(init["density_matrix"], "initial_state.density_matrix");
    } else {
        const json& b = init["bloch"];
        if (!b.is_array() || b.size() != 3 || !b[0].is_number() || !b[1].is_number() ||
            !b[2].is_number()) {
            throw ConfigError("initial_state.bloch: expected [x, y, z]");
        }
        c.initial_state = BlochState{b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
    }

    const json& sched = require_key(j, "schedule", "config");
    c.schedule.t_final = number_field(sched, "t_final", "schedule");
    if (sched.contains("dt")) c.schedule.dt = number_field(sched, "dt", "schedule");
    if (sched.contains("sample_every")) {
        const json& se = sched["sample_every"];
        if (!se.is_number_integer()) throw ConfigError("schedule.sample_every: expected an integer");
        c.schedule.sample_every = se.get<int>();
    }

    if (const auto m = j.find("method"); m != j.end()) {
        if (!m->is_string()) throw ConfigError("method: expected a string");
        c.method = parse_method(m->get<std::string>());
    }

    if (const auto p = j.find("projections"); p != j.end()) {
        if (!p->is_array()) throw ConfigError("projections: expected an array");
        for (std::size_t k = 0; k < p->size(); ++k) {
            const std::string field = "projections[" + std::to_string(k) + "]";
            const json& pj = (*p)[k];
            const json& name = require_key(pj, "name", field);
            if (!name.is_string()) throw ConfigError(field + ".name: expected a string");
            c.projections.push_back(
                {name.get<std::string>(),
                 matrix_from_json(require_key(pj, "matrix", field), field + ".matrix")});
        }
    }

    if (const auto o = j.find("output"); o != j.end()) {
        if (!o->is_string()) throw ConfigError("output: expected a string");
        c.output = o->get<std::string>();
    }

    validate_config(c);
    return c;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
    return parse_config(j);
}

json serialize_config(const ScenarioConfig& c)
{
    json channels = json::array();
    for (const auto& ch : c.channels) {
        channels.push_back({{"name", ch.name}, {"rate", ch.rate}, {"operator", matrix_to_json(ch.op)}});
    }
    json init;
    if (const auto* rho = std::get_if<ComplexMatrix>(&c.initial_state)) {
        init["density_matrix"] = matrix_to_json(*rho);
    } else {
        const auto& b = std::get<BlochState>(c.initial_state);
        init["bloch"] = json::array({b.x, b.y, b.z});
    }
    json projections = json::array();
    for (const auto& p : c.projections) {
        projections.push_back({{"name", p.name}, {"matrix", matrix_to_json(p.matrix)}});
    }
    return {
        {"model",
         {{"dim", c.dim()}, {"hamiltonian", matrix_to_json(c.hamiltonian)}, {"channels", channels}}},
        {"initial_state", init},
        {"schedule",
         {{"t_final", c.schedule.t_final},
          {"dt", c.schedule.dt},
          {"sample_every", c.schedule.sample_every}}},
        {"method", to_string(c.method)},
        {"projections", projections},
        {"output", c.output},
    };
}

ComplexMatrix load_basis(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("basis: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("basis: " + path + ": " + e.what());
    }
    if (j.is_object()) return matrix_from_json(require_key(j, "unitary", "basis"), "basis.unitary");
    return matrix_from_json(j, "basis");
}

} // namespace oqs::cli
