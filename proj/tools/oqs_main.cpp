// oqs: command-line front end
//
//   oqs evolve   --config two_level.json [--out run.csv] [--method rk4|exact] [--dt 1e-3] [--t-final 10]
//   oqs currents --config three_level.json [--basis energy_basis.json]
//   oqs channel choi --map transpose --dim 2
//   oqs channel choi --map semigroup --config two_level.json --t 1
//   oqs channel herald --psi 1 0 0 0
//   oqs channel semigroup --config two_level.json --t 1
//   oqs verify [--seed 42]

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "oqs/cli/commands.hpp"
#include "oqs/cli/config.hpp"
#include "oqs/cli/verify.hpp"

using namespace oqs::cli;

namespace {

struct Overrides {
    std::optional<std::string> method;
    std::optional<double> dt;
    std::optional<double> t_final;
};

ScenarioConfig load_with_overrides(const std::string& path, const Overrides& o)
{
    ScenarioConfig config = load_config(path);
    if (o.method) config.method = parse_method(*o.method);
    if (o.dt) config.schedule.dt = *o.dt;
    if (o.t_final) config.schedule.t_final = *o.t_final;
    validate_config(config);
    return config;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lindblad dynamics, relaxation currents and channel diagnostics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string basis_path;
    Overrides overrides;

    auto* evolve = app.add_subcommand("evolve", "integrate a scenario and write per-sample CSV");
    evolve->add_option("--config", config_path, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
    evolve->add_option("--out", out_path, "CSV output path (defaults to the config's \"output\", else stdout)");
    evolve->add_option("--method", overrides.method, "rk4 | exact");
    evolve->add_option("--dt", overrides.dt, "step size");
    evolve->add_option("--t-final", overrides.t_final, "final time");

    auto* currents = app.add_subcommand("currents", "print current observables per channel and projection");
    currents->add_option("--config", config_path, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
    currents->add_option("--basis", basis_path, "unitary basis change (JSON matrix)")->check(CLI::ExistingFile);

    auto* channel = app.add_subcommand("channel", "quantum channel diagnostics");
    channel->require_subcommand(1);

    std::string map_name = "transpose";
    oqs::Index dim = 2;
    double t = 1.0;
    auto* choi = channel->add_subcommand("choi", "Choi spectrum and CP/TP verdict");
    choi->add_option("--map", map_name, "transpose | identity | semigroup")
        ->check(CLI::IsMember({"transpose", "identity", "semigroup"}));
    choi->add_option("--dim", dim, "dimension for transpose/identity")->check(CLI::PositiveNumber);
    choi->add_option("--config", config_path, "scenario config for --map semigroup")->check(CLI::ExistingFile);
    choi->add_option("--t", t, "time for --map semigroup")->check(CLI::NonNegativeNumber);

    std::vector<double> psi;
    auto* herald = channel->add_subcommand("herald", "herald Bob's state from Alice's test");
    herald->add_option("--psi", psi, "re0 im0 re1 im1")->required()->expected(4);

    auto* semigroup = channel->add_subcommand("semigroup", "Bloch action and CPTP verdict of e^{tL}");
    semigroup->add_option("--config", config_path, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
    semigroup->add_option("--t", t, "time")->check(CLI::NonNegativeNumber);

    VerifyOptions verify_options;
    auto* verify = app.add_subcommand("verify", "run every invariant suite");
    verify->add_option("--seed", verify_options.seed, "random seed");
    verify->add_flag("--inject-nonhermitian-h", verify_options.corrupt_hamiltonian)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*evolve) {
            const ScenarioConfig config = load_with_overrides(config_path, overrides);
            const std::string csv = out_path.empty() ? config.output : out_path;
            return cmd_evolve(config, csv, std::cout);
        }
        if (*currents) {
            const ScenarioConfig config = load_config(config_path);
            std::optional<oqs::ComplexMatrix> basis;
            if (!basis_path.empty()) basis = load_basis(basis_path);
            std::cout << currents_report(config, basis).dump(2) << '\n';
            return kExitOk;
        }
        if (*choi) {
            std::optional<ScenarioConfig> config;
            if (!config_path.empty()) config = load_config(config_path);
            std::cout << choi_report(map_name, dim, config, t).dump(2) << '\n';
            return kExitOk;
        }
        if (*herald) {
            std::cout << herald_report(psi).dump(2) << '\n';
            return kExitOk;
        }
        if (*semigroup) {
            std::cout << semigroup_report(load_config(config_path), t).dump(2) << '\n';
            return kExitOk;
        }
        if (*verify) {
            return cmd_verify(verify_options, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}
