#include "oqs/cli/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "oqs/currents.hpp"

namespace oqs::cli {

std::string format_number(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::vector<std::string> csv_header(const ScenarioConfig& config)
{
    std::vector<std::string> header{"t"};
    if (config.dim() == 2) {
        header.insert(header.end(), {"x", "y", "z"});
    }
    for (const auto& p : config.projections) header.push_back("pop:" + p.name);
    const LindbladModel model = config.model();
    for (std::size_t k = 0; k < model.channels().size(); ++k) {
        for (const auto& p : config.projections) {
            header.push_back("cur:" + model.channel_label(k) + ":" + p.name);
        }
    }
    header.insert(header.end(), {"trace_err", "min_eig"});
    return header;
}

ComplexMatrix stationary_state(const LindbladModel& model)
{
    const Superoperator s = to_superoperator(model);
    const Eigen::JacobiSVD<ComplexMatrix> svd(s.matrix, Eigen::ComputeFullV);
    const ComplexVector v = svd.matrixV().col(svd.matrixV().cols() - 1);
    ComplexMatrix rho = unstack(v, model.dim(), model.dim());
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-12) throw NumericError("stationary_state: null vector is traceless");
    return hermitize(rho / tr);
}

RunReport run_evolve(const ScenarioConfig& config)
{
    const LindbladModel model = config.model();
    const DensityMatrix rho0 = config.initial_density();
    const auto& sched = config.schedule;

    const Trajectory traj =
        config.method == Method::rk4
            ? evolve_rk4(model, rho0, sched.t_final, sched.dt, sched.sample_every)
            : evolve_exact_trajectory(model, rho0, sched.t_final, sched.dt, sched.sample_every);

    RunReport report;
    report.header = csv_header(config);
    report.rows.reserve(traj.states.size());

    const std::size_t n_proj = config.projections.size();
    const std::size_t n_chan = model.channels().size();
    double max_terr = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();

    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        const DensityMatrix& rho = traj.states[s];
        std::vector<double> row{traj.times[s]};
        if (config.dim() == 2) {
            const BlochState b = bloch_from_rho(rho);
            row.insert(row.end(), {b.x, b.y, b.z});
        }
        std::vector<std::vector<RateTerm>> terms;
        terms.reserve(n_proj);
        for (const auto& p : config.projections) {
            row.push_back(trace_product(rho.matrix(), p.matrix).real());
            terms.push_back(rate_decomposition(model, rho, p.matrix));
        }
        for (std::size_t k = 0; k < n_chan; ++k) {
            for (std::size_t q = 0; q < n_proj; ++q) {
                row.push_back(terms[q][k + 1].value); // entry 0 is the unitary term
            }
        }
        row.push_back(traj.diagnostics[s].trace_error);
        row.push_back(traj.diagnostics[s].min_eigenvalue);
        max_terr = std::max(max_terr, traj.diagnostics[s].trace_error);
        min_eig = std::min(min_eig, traj.diagnostics[s].min_eigenvalue);
        report.rows.push_back(std::move(row));
    }

    report.summary.final_state = traj.states.back().matrix();
    report.summary.stationary_estimate = stationary_state(model);
    report.summary.method = traj.method;
    report.summary.max_trace_error = max_terr;
    report.summary.min_eigenvalue = min_eig;
    return report;
}

std::string to_csv(const RunReport& report)
{
    std::string out;
    for (std::size_t i = 0; i < report.header.size(); ++i) {
        if (i > 0) out += ',';
        out += report.header[i];
    }
    out += '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json summary_json(const RunReport& report)
{
    return {
        {"method", report.summary.method},
        {"rows", report.rows.size()},
        {"final_state", matrix_to_json(report.summary.final_state)},
        {"stationary_estimate", matrix_to_json(report.summary.stationary_estimate)},
        {"max_trace_error", report.summary.max_trace_error},
        {"min_eigenvalue", report.summary.min_eigenvalue},
    };
}

} // namespace oqs::cli
