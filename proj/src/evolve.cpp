#include "oqs/evolve.hpp"

#include <cmath>
#include <sstream>

#include "oqs/currents.hpp"

namespace oqs {

namespace {

void require_schedule(double t_final, double dt, int sample_every)
{
    if (!std::isfinite(t_final) || t_final < 0.0) throw DomainError("t_final must be finite and >= 0");
    if (!std::isfinite(dt) || dt <= 0.0) throw DomainError("dt must be finite and > 0");
    if (sample_every < 1) throw DomainError("sample_every must be >= 1");
}

DensityTolerance rk4_tolerance()
{
    DensityTolerance tol;
    tol.trace = kRk4TraceLimit;
    tol.psd = kRk4NegativityLimit;
    return tol;
}

} // namespace

double BlochState::norm() const
{
    return std::sqrt(x * x + y * y + z * z);
}

TwoLevelParams::TwoLevelParams(double eps, double mu, double lambda, double delta)
    : eps_(eps), mu_(mu), lambda_(lambda), delta_(delta)
{
    if (!std::isfinite(eps)) throw DomainError("TwoLevelParams: eps must be finite");
    for (double r : {mu, lambda, delta}) {
        if (!std::isfinite(r) || r < 0.0) throw DomainError("TwoLevelParams: rates must be >= 0");
    }
}

double TwoLevelParams::beta() const noexcept
{
    return 2.0 * delta_ + 0.5 * (lambda_ + mu_);
}

double TwoLevelParams::z_inf() const
{
    const double total = lambda_ + mu_;
    if (!(total > 0.0)) throw DomainError("TwoLevelParams: z_inf undefined when lambda + mu = 0");
    return (mu_ - lambda_) / total;
}

LindbladModel TwoLevelParams::model() const
{
    return build_two_level(eps_, mu_, lambda_, delta_);
}

long step_count(double t_final, double dt)
{
    return static_cast<long>(std::floor(t_final / dt * (1.0 + 1e-9)));
}

Trajectory evolve_rk4(const LindbladModel& model, const DensityMatrix& rho0, double t_final,
                      double dt, int sample_every)
{
    require_schedule(t_final, dt, sample_every);
    require_same_square(model.hamiltonian(), rho0.matrix(), "evolve_rk4");

    const long steps = step_count(t_final, dt);
    const Superoperator s = to_superoperator(model);
    const auto f = [&](const ComplexVector& v) -> ComplexVector { return s.matrix * v; };
    const Index d = model.dim();

    Trajectory traj;
    traj.method = "rk4";
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);
    traj.diagnostics.push_back({rho0.trace_error(), rho0.min_eigenvalue()});

    ComplexVector v = stack(rho0.matrix());
    for (long n = 1; n <= steps; ++n) {
        const ComplexVector k1 = f(v);
        const ComplexVector k2 = f(v + 0.5 * dt * k1);
        const ComplexVector k3 = f(v + 0.5 * dt * k2);
        const ComplexVector k4 = f(v + dt * k3);
        v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const ComplexMatrix rho = hermitize(unstack(v, d, d));
        v = stack(rho);

        if (!rho.allFinite()) {
            throw StabilityError("evolve_rk4: non-finite state at step " + std::to_string(n));
        }
        const double terr = std::abs(rho.trace() - 1.0);
        const double lmin = min_eigenvalue(rho);
        if (terr > kRk4TraceLimit || lmin < -kRk4NegativityLimit) {
            std::ostringstream msg;
            msg << "evolve_rk4: unstable at step " << n << " (t = " << n * dt
                << "): trace error " << terr << ", min eigenvalue " << lmin;
            throw StabilityError(msg.str());
        }
        if (n % sample_every == 0) {
            traj.times.push_back(static_cast<double>(n) * dt);
            traj.states.emplace_back(rho, rk4_tolerance());
            traj.diagnostics.push_back({terr, lmin});
        }
    }
    return traj;
}

DensityMatrix evolve_exact(const Superoperator& superop, const DensityMatrix& rho0, double t,
                           ExpmReport* report)
{
    if (!std::isfinite(t) || t < 0.0) throw DomainError("evolve_exact: t must be finite and >= 0");
    if (superop.dim_in != superop.dim_out || superop.dim_in != rho0.dim()) {
        throw ShapeError("evolve_exact: superoperator does not act on the state's dimension");
    }
    if (t == 0.0) {
        if (report != nullptr) *report = {"identity", 0};
        return rho0;
    }
    const ComplexMatrix propagator = expm(t * superop.matrix, report);
    const ComplexMatrix rho =
        hermitize(unstack(propagator * stack(rho0.matrix()), rho0.dim(), rho0.dim()));
    return DensityMatrix(rho);
}

Trajectory evolve_exact_trajectory(const LindbladModel& model, const DensityMatrix& rho0,
                                   double t_final, double dt, int sample_every)
{
    require_schedule(t_final, dt, sample_every);
    const Superoperator s = to_superoperator(model);
    const long steps = step_count(t_final, dt);

    Trajectory traj;
    traj.method = "exact";
    for (long n = 0; n <= steps; n += sample_every) {
        const double t = static_cast<double>(n) * dt;
        ExpmReport report;
        DensityMatrix rho = evolve_exact(s, rho0, t, &report);
        if (n > 0) traj.method = "exact:" + report.method;
        traj.times.push_back(t);
        traj.diagnostics.push_back({rho.trace_error(), rho.min_eigenvalue()});
        traj.states.push_back(std::move(rho));
    }
    return traj;
}

BlochState two_level_analytic(const TwoLevelParams& params, const BlochState& b0, double t)
{
    if (!std::isfinite(t) || t < 0.0) throw DomainError("two_level_analytic: t must be >= 0");
    if (!(params.lambda() + params.mu() > 0.0)) {
        throw DomainError(
            "two_level_analytic: lambda + mu = 0 has no relaxation; use evolve_exact");
    }
    const double z_inf = params.z_inf();
    const double z = (b0.z - z_inf) * std::exp(-(params.lambda() + params.mu()) * t) + z_inf;
    const Complex zeta0{b0.x, b0.y};
    const Complex zeta = zeta0 * std::exp(Complex{-params.beta(), -params.eps()} * t);
    return {zeta.real(), zeta.imag(), z};
}

BlochState bloch_from_rho(const DensityMatrix& rho)
{
    if (rho.dim() != 2) throw UnsupportedDimensionError("bloch_from_rho: qubit states only");
    const auto& m = rho.matrix();
    return {trace_product(m, pauli::x()).real(), trace_product(m, pauli::y()).real(),
            trace_product(m, pauli::z()).real()};
}

DensityMatrix rho_from_bloch(const BlochState& b)
{
    if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.z)) {
        throw DomainError("rho_from_bloch: non-finite Bloch vector");
    }
    if (b.norm() > 1.0 + 1e-9) {
        throw DomainError("rho_from_bloch: Bloch vector outside the unit ball");
    }
    const ComplexMatrix rho =
        0.5 * (identity(2) + b.x * pauli::x() + b.y * pauli::y() + b.z * pauli::z());
    DensityTolerance tol;
    tol.psd = 1e-9;
    return DensityMatrix(rho, tol);
}

} // namespace oqs
