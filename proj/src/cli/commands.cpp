#include "oqs/cli/commands.hpp"

#include <fstream>
#include <iostream>

#include "oqs/channels.hpp"
#include "oqs/cli/report.hpp"
#include "oqs/currents.hpp"

namespace oqs::cli {

using nlohmann::json;

namespace {

json vector_to_json(const RealVector& v)
{
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

json state_to_json(const ComplexVector& v)
{
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(json::array({v(i).real(), v(i).imag()}));
    return arr;
}

json bloch_action_json(const BlochAction& action)
{
    json linear = json::array();
    for (int i = 0; i < 3; ++i) {
        linear.push_back(json::array({action.linear(i, 0), action.linear(i, 1), action.linear(i, 2)}));
    }
    return {
        {"linear", linear},
        {"translation",
         json::array({action.translation(0), action.translation(1), action.translation(2)})},
        {"determinant", action.determinant()},
    };
}

json map_verdict_json(const MatrixMap& phi)
{
    const CpReport cp = is_completely_positive(phi);
    const double tp_defect = trace_preservation_defect(phi);
    return {
        {"choi_spectrum", vector_to_json(cp.spectrum)},
        {"choi_min_eigenvalue", cp.min_eigenvalue},
        {"verdict_cp", cp.completely_positive ? "CP" : "NOT-CP"},
        {"tp_defect", tp_defect},
        {"verdict_tp", tp_defect <= 1e-10 ? "TP" : "NOT-TP"},
    };
}

} // namespace

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const StabilityError*>(&e) != nullptr ||
        dynamic_cast<const NumericError*>(&e) != nullptr) {
        return kExitNumeric;
    }
    return kExitValidation;
}

int cmd_evolve(const ScenarioConfig& config, const std::string& csv_path, std::ostream& out)
{
    const RunReport report = run_evolve(config);
    const std::string csv = to_csv(report);
    if (csv_path.empty()) {
        out << csv;
        return kExitOk;
    }
    std::ofstream file(csv_path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("output: cannot open " + csv_path + " for writing");
    file << csv;
    file.close();
    if (!file) throw ConfigError("output: failed writing " + csv_path);

    json summary = summary_json(report);
    summary["csv"] = csv_path;
    out << summary.dump(2) << '\n';
    return kExitOk;
}

json currents_report(const ScenarioConfig& config, const std::optional<ComplexMatrix>& basis)
{
    const LindbladModel model = config.model();
    std::optional<BasisChange> change;
    if (basis) {
        if (basis->rows() != model.dim() || basis->cols() != model.dim()) {
            throw ConfigError("basis: expected a " + std::to_string(model.dim()) + "x" +
                              std::to_string(model.dim()) + " unitary");
        }
        change.emplace(*basis);
    }

    json projections = json::array();
    for (const auto& p : config.projections) {
        json channels = json::array();
        for (const auto& obs : current_observables(model, p.matrix)) {
            json entry = {
                {"index", obs.channel_index},
                {"channel", model.channel_label(obs.channel_index)},
                {"rate", model.channels()[obs.channel_index].rate},
                {"observable", matrix_to_json(obs.observable)},
            };
            if (change) {
                entry["observable_in_basis"] = matrix_to_json(transform_observable(obs.observable, *change));
            }
            channels.push_back(std::move(entry));
        }
        projections.push_back({{"projection", p.name},
                               {"matrix", matrix_to_json(p.matrix)},
                               {"channels", channels}});
    }
    json report = {{"dim", model.dim()}, {"projections", projections}};
    if (change) report["basis"] = matrix_to_json(change->unitary());
    return report;
}

json choi_report(const std::string& map_name, Index dim, const std::optional<ScenarioConfig>& config,
                 double t)
{
    std::optional<MatrixMap> phi;
    if (map_name == "transpose") {
        phi.emplace(transpose_map(dim));
    } else if (map_name == "identity") {
        phi.emplace(identity_map(dim));
    } else if (map_name == "semigroup") {
        if (!config) throw ConfigError("channel choi --map semigroup: --config is required");
        phi.emplace(semigroup_channel(config->model(), t));
        dim = config->dim();
    } else {
        throw ConfigError("channel choi: unknown map \"" + map_name + "\"");
    }
    json report = {{"map", map_name}, {"dim", dim}};
    if (map_name == "semigroup") report["t"] = t;
    report.update(map_verdict_json(*phi));
    return report;
}

json herald_report(const std::vector<double>& amplitudes)
{
    if (amplitudes.size() != 4) {
        throw DomainError("herald: --psi expects 4 numbers (re0 im0 re1 im1)");
    }
    const StateVector psi(ComplexVector{{Complex{amplitudes[0], amplitudes[1]},
                                         Complex{amplitudes[2], amplitudes[3]}}});
    const HeraldOutcome outcome = herald(psi);

    const MatrixMap reconstructed = heralding_as_map();
    const double deviation =
        (reconstructed.superoperator().matrix - transpose_map(2).superoperator().matrix).norm();
    json map = map_verdict_json(reconstructed);
    map["equals_transpose"] = deviation <= 1e-10;
    map["deviation_from_transpose"] = deviation;
    map["bloch_action"] = bloch_action_json(bloch_action(reconstructed));

    return {
        {"psi", state_to_json(psi.amplitudes())},
        {"probability", outcome.probability},
        {"bob_state", state_to_json(outcome.bob_state.amplitudes())},
        {"reconstructed_map", map},
    };
}

json semigroup_report(const ScenarioConfig& config, double t)
{
    const MatrixMap phi = semigroup_channel(config.model(), t);
    json report = {{"t", t}, {"dim", config.dim()}};
    report.update(map_verdict_json(phi));
    report["bloch_action"] = config.dim() == 2 ? bloch_action_json(bloch_action(phi)) : json();
    return report;
}

} // namespace oqs::cli
