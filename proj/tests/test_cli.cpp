#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oqs/cli/commands.hpp"
#include "oqs/cli/config.hpp"
#include "oqs/cli/report.hpp"
#include "oqs/cli/verify.hpp"
#include "oqs/currents.hpp"
#include "oqs/evolve.hpp"

using namespace oqs;
using namespace oqs::cli;
using nlohmann::json;

namespace {

const std::string kConfigDir = OQS_CONFIG_DIR;

std::string config_path(const std::string& name)
{
    return kConfigDir + "/" + name;
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    return json::parse(in);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_path(const std::string& stem)
{
    return std::filesystem::temp_directory_path() /
           ("oqs_test_" + std::to_string(::getpid()) + "_" + stem);
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args)
{
    const std::string cmd = std::string("\"") + OQS_CLI_PATH + "\" " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

/// Parses and expects a ConfigError whose message starts with field.
void expect_config_error(const json& j, const std::string& field)
{
    try {
        (void)parse_config(j);
        FAIL("expected ConfigError for " << field);
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK_MESSAGE(msg.rfind(field, 0) == 0, msg);
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

ComplexMatrix matrix_at(const json& j)
{
    return matrix_from_json(j, "test");
}

} // namespace

TEST_CASE("bundled configs parse and round-trip canonically")
{
    for (const char* name : {"two_level.json", "three_level.json"}) {
        const ScenarioConfig c = load_config(config_path(name));
        const json once = serialize_config(c);
        const json twice = serialize_config(parse_config(once));
        CHECK(once == twice);
        CHECK(once.dump() == twice.dump());
    }
    const ScenarioConfig two = load_config(config_path("two_level.json"));
    CHECK(two.dim() == 2);
    CHECK(two.method == Method::rk4);
    CHECK(two.schedule.sample_every == 100);
    REQUIRE(two.channels.size() == 3);
    CHECK(two.channels[0].name == "radiative");
    CHECK((two.model().hamiltonian() - build_two_level(1.0, 0.3, 0.1, 0.05).hamiltonian()).norm() == 0.0);
}

TEST_CASE("bare numbers are accepted and canonicalized to [re, im] pairs")
{
    json j = read_json(config_path("two_level.json"));
    j["model"]["hamiltonian"] = json::array({json::array({-0.5, 0}), json::array({0, 0.5})});
    const ScenarioConfig c = parse_config(j);
    CHECK(c.hamiltonian(0, 0) == Complex(-0.5, 0.0));
    const json canon = serialize_config(c);
    CHECK(canon["model"]["hamiltonian"][0][0] == json::array({-0.5, 0.0}));
}

TEST_CASE("config validation names the offending field")
{
    const json base = read_json(config_path("two_level.json"));

    json j = base;
    j["model"]["hamiltonian"][0][1] = json::array({1.0, 0.0});
    expect_config_error(j, "model.hamiltonian");

    j = base;
    j["model"]["channels"][1]["rate"] = -0.1;
    expect_config_error(j, "model.channels[1].rate");

    j = base;
    j["model"]["channels"][0]["operator"] = json::array({json::array({0, 1, 0})});
    expect_config_error(j, "model.channels[0].operator");

    j = base;
    j["model"]["dim"] = 0;
    expect_config_error(j, "model.dim");

    j = base;
    j["method"] = "euler";
    expect_config_error(j, "method");

    j = base;
    j["schedule"]["dt"] = 0.0;
    expect_config_error(j, "schedule.dt");

    j = base;
    j["schedule"]["sample_every"] = 0;
    expect_config_error(j, "schedule.sample_every");

    j = base;
    j["schedule"].erase("t_final");
    expect_config_error(j, "schedule.t_final");

    j = base;
    j["initial_state"]["bloch"] = json::array({0.9, 0.9, 0.0});
    expect_config_error(j, "initial_state");

    j = base;
    j["projections"][0]["matrix"] = json::array({json::array({0.5, 0}), json::array({0, 0.5})});
    expect_config_error(j, "projections[0].matrix");

    j = base;
    j["projections"][1]["name"] = j["projections"][0]["name"];
    expect_config_error(j, "projections[1].name");

    j = base;
    j.erase("model");
    expect_config_error(j, "config.model");
}

TEST_CASE("number formatting")
{
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-0.5) == "-0.5");
    CHECK(format_number(1e-20) == "9.9999999999999995e-21");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(10.0) == "10");
}

TEST_CASE("CSV schema")
{
    const ScenarioConfig two = load_config(config_path("two_level.json"));
    const std::vector<std::string> h2 = csv_header(two);
    const std::vector<std::string> expected2{
        "t",
        "x",
        "y",
        "z",
        "pop:P0",
        "pop:P1",
        "cur:radiative:P0",
        "cur:radiative:P1",
        "cur:excitation:P0",
        "cur:excitation:P1",
        "cur:dephasing:P0",
        "cur:dephasing:P1",
        "trace_err",
        "min_eig",
    };
    CHECK(h2 == expected2);

    const ScenarioConfig three = load_config(config_path("three_level.json"));
    const std::vector<std::string> expected3{
        "t", "pop:P0", "pop:P1", "cur:1->0:P0", "cur:1->0:P1", "cur:2->1:P0", "cur:2->1:P1", "trace_err", "min_eig",
    };
    CHECK(csv_header(three) == expected3);
}

TEST_CASE("two-level run: row count, endpoint and stationary estimate")
{
    const ScenarioConfig c = load_config(config_path("two_level.json"));
    const RunReport r = run_evolve(c);
    const long expected_rows =
        static_cast<long>(std::floor(c.schedule.t_final / c.schedule.dt / c.schedule.sample_every)) + 1;
    CHECK(static_cast<long>(r.rows.size()) == expected_rows);

    // z column against the closed form z(10) = 0.5 − 1.5e^{−4}.
    const double z_end = r.rows.back()[3];
    CHECK(std::abs(z_end - (0.5 - 1.5 * std::exp(-4.0))) <= 1e-6);
    CHECK(std::abs(r.rows.back()[0] - 10.0) < 1e-12);

    // Stationary populations (1 ± z∞)/2 with z∞ = 0.5.
    const ComplexMatrix stat = r.summary.stationary_estimate;
    CHECK(std::abs(stat(0, 0).real() - 0.75) < 1e-12);
    CHECK(std::abs(stat(1, 1).real() - 0.25) < 1e-12);
    CHECK(r.summary.method == "rk4");
    CHECK(r.summary.max_trace_error <= 1e-9);

    const std::string csv = to_csv(r);
    const std::vector<std::string> lines = split(csv, '\n');
    CHECK(lines.size() == r.rows.size() + 1);
    CHECK(csv.find(',') != std::string::npos);
    CHECK(split(lines[1], ',').size() == r.header.size());
}

TEST_CASE("t_final = 0 echoes the initial state in a single row")
{
    ScenarioConfig c = load_config(config_path("two_level.json"));
    c.schedule.t_final = 0.0;
    for (Method m : {Method::rk4, Method::exact}) {
        c.method = m;
        const RunReport r = run_evolve(c);
        REQUIRE(r.rows.size() == 1);
        CHECK(r.rows[0][0] == 0.0);
        CHECK(r.rows[0][1] == 0.0);
        CHECK(r.rows[0][2] == 0.0);
        CHECK(r.rows[0][3] == -1.0);
    }
}

TEST_CASE("exact and RK4 runs agree on the bundled config")
{
    ScenarioConfig c = load_config(config_path("two_level.json"));
    const RunReport rk4 = run_evolve(c);
    c.method = Method::exact;
    const RunReport exact = run_evolve(c);
    REQUIRE(rk4.rows.size() == exact.rows.size());
    for (std::size_t i = 0; i < rk4.rows.size(); ++i)
        for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(rk4.rows[i][k] - exact.rows[i][k]) <= 1e-6);
    CHECK(exact.summary.method.rfind("exact", 0) == 0);
}

TEST_CASE("three-level current column matches the currents module")
{
    const ScenarioConfig c = load_config(config_path("three_level.json"));
    const RunReport r = run_evolve(c);
    const auto col = std::find(r.header.begin(), r.header.end(), "cur:2->1:P1") - r.header.begin();
    REQUIRE(col < static_cast<long>(r.header.size()));

    // Re-run the same trajectory directly and contract with (μ21/4)(|1⟩⟨2| + |2⟩⟨1|).
    const Trajectory tr = evolve_rk4(c.model(), c.initial_density(), c.schedule.t_final, c.schedule.dt,
                                     c.schedule.sample_every);
    REQUIRE(tr.states.size() == r.rows.size());
    const ComplexMatrix j = (0.2 / 4.0) * (ket_bra(1, 2, 3) + ket_bra(2, 1, 3));
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.states.size(); ++i)
        worst = std::max(worst, std::abs(r.rows[i][static_cast<std::size_t>(col)] -
                                         trace_product(tr.states[i].matrix(), j).real()));
    CHECK(worst <= 1e-15);
}

TEST_CASE("currents report examples")
{
    const ScenarioConfig two = load_config(config_path("two_level.json"));
    const json rep = currents_report(two, std::nullopt);
    REQUIRE(rep["projections"][0]["projection"] == "P0");
    const json& radiative = rep["projections"][0]["channels"][0];
    CHECK(radiative["channel"] == "radiative");
    const ComplexMatrix obs = matrix_at(radiative["observable"]);
    CHECK((obs - 0.3 * ket_bra(1, 1, 2)).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK_FALSE(rep.contains("basis"));

    const ScenarioConfig three = load_config(config_path("three_level.json"));
    const ComplexMatrix basis = load_basis(config_path("energy_basis.json"));
    const json rep3 = currents_report(three, basis);
    REQUIRE(rep3["projections"][1]["projection"] == "P1");
    const json& down = rep3["projections"][1]["channels"][1];
    CHECK(down["channel"] == "2->1");
    ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
    expected(1, 1) = -0.05;
    expected(2, 2) = 0.05;
    CHECK((matrix_at(down["observable_in_basis"]) - expected).cwiseAbs().maxCoeff() <= 1e-14);

    ScenarioConfig with_identity = two;
    with_identity.projections = {{"I", identity(2)}};
    const json rep_i = currents_report(with_identity, std::nullopt);
    for (const json& ch : rep_i["projections"][0]["channels"])
        CHECK(matrix_at(ch["observable"]).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(currents_report(two, basis), ConfigError);
}

TEST_CASE("channel reports")
{
    const json t = choi_report("transpose", 2, std::nullopt, 0.0);
    const std::vector<double> spectrum = t["choi_spectrum"];
    const std::vector<double> frozen{-1.0, 1.0, 1.0, 1.0};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(spectrum[i] - frozen[i]) <= 1e-12);
    CHECK(t["verdict_cp"] == "NOT-CP");
    CHECK(t["verdict_tp"] == "TP");

    const json s = choi_report("semigroup", 2, load_config(config_path("two_level.json")), 1.0);
    CHECK(s["verdict_cp"] == "CP");
    CHECK(s["verdict_tp"] == "TP");
    CHECK_THROWS_AS(choi_report("semigroup", 2, std::nullopt, 1.0), ConfigError);

    const json h = herald_report({1.0, 0.0, 0.0, 0.0});
    CHECK(std::abs(h["probability"].get<double>() - 0.5) <= 1e-15);
    CHECK(std::abs(std::hypot(h["bob_state"][0][0].get<double>(), h["bob_state"][0][1].get<double>()) - 1.0) <= 1e-15);
    CHECK(h["reconstructed_map"]["equals_transpose"] == true);
    CHECK(h["reconstructed_map"]["verdict_cp"] == "NOT-CP");
    CHECK(std::abs(h["reconstructed_map"]["bloch_action"]["determinant"].get<double>() + 1.0) <= 1e-10);
    CHECK_THROWS_AS(herald_report({1.0, 0.0, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(herald_report({1.0, 0.0}), DomainError);

    const json sg = semigroup_report(load_config(config_path("two_level.json")), 1.0);
    CHECK(sg["verdict_cp"] == "CP");
    CHECK(sg["verdict_tp"] == "TP");
    CHECK(sg["bloch_action"]["linear"].size() == 3);
}

TEST_CASE("exit codes for library errors")
{
    CHECK(exit_code_for(StabilityError("x")) == kExitNumeric);
    CHECK(exit_code_for(NumericError("x")) == kExitNumeric);
    CHECK(exit_code_for(ConfigError("x")) == kExitValidation);
    CHECK(exit_code_for(DomainError("x")) == kExitValidation);
}

TEST_CASE("verify suites are deterministic and the negative control fails")
{
    std::ostringstream first, second;
    CHECK(cmd_verify({}, first) == 0);
    CHECK(cmd_verify({}, second) == 0);
    CHECK(first.str() == second.str());
    CHECK(first.str().find("FAIL") == std::string::npos);

    const std::vector<SuiteResult> results = run_verify({});
    bool duality_reported = false;
    for (const SuiteResult& r : results) {
        CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);
        if (r.name == "lindblad.duality") duality_reported = r.detail.find("max") != std::string::npos;
    }
    CHECK(duality_reported);

    VerifyOptions corrupt;
    corrupt.corrupt_hamiltonian = true;
    std::ostringstream bad;
    CHECK(cmd_verify(corrupt, bad) == 1);
    CHECK(bad.str().find("validation failure") != std::string::npos);
}

TEST_CASE("command-line binary")
{
    const RunResult choi = run_cli("channel choi --map transpose --dim 2");
    CHECK(choi.exit_code == 0);
    CHECK(json::parse(choi.out)["verdict_cp"] == "NOT-CP");

    const RunResult herald = run_cli("channel herald --psi 1 0 0 0");
    CHECK(herald.exit_code == 0);
    CHECK(std::abs(json::parse(herald.out)["probability"].get<double>() - 0.5) <= 1e-12);

    const std::filesystem::path a = temp_path("a.csv"), b = temp_path("b.csv");
    const std::string cfg = "\"" + config_path("two_level.json") + "\"";
    CHECK(run_cli("evolve --config " + cfg + " --out \"" + a.string() + "\"").exit_code == 0);
    CHECK(run_cli("evolve --config " + cfg + " --out \"" + b.string() + "\"").exit_code == 0);
    const std::string csv_a = read_file(a);
    CHECK_FALSE(csv_a.empty());
    CHECK(csv_a == read_file(b));

    // Exit code 1 on invalid input, 2 on an unstable integration.
    CHECK(run_cli("evolve --config " + cfg + " --dt -1 --out \"" + a.string() + "\"").exit_code == 1);
    const std::filesystem::path stiff = temp_path("stiff.json");
    {
        json j = read_json(config_path("two_level.json"));
        j["model"]["channels"][0]["rate"] = 50.0;
        std::ofstream(stiff) << j.dump();
    }
    CHECK(run_cli("evolve --config \"" + stiff.string() + "\" --dt 0.2 --out \"" + a.string() + "\"").exit_code == 2);
    CHECK(run_cli("evolve").exit_code == 1);
    CHECK(run_cli("verify --inject-nonhermitian-h").exit_code == 1);

    std::filesystem::remove(a);
    std::filesystem::remove(b);
    std::filesystem::remove(stiff);
}
