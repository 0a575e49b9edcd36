// evolve.hpp: time evolution of density matrices
//
// Two numerical routes (fixed-step RK4 and the exponential of the vectorized
// generator) plus the closed-form Bloch solution of the two-level model,
// which serves as the oracle for both.

#pragma once

#include <string>
#include <vector>

#include "oqs/density.hpp"
#include "oqs/lindblad.hpp"

namespace oqs {

struct BlochState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

/// Parameters of build_two_level(eps, mu, lambda, delta) and the derived
/// relaxation constants of its Bloch equations
///
///     ẋ = −β x + ε y,   ẏ = −ε x − β y,   ż = (μ − λ) − (μ + λ) z
///
/// with ζ = x + iy obeying ζ̇ = −(iε + β) ζ.
class TwoLevelParams {
public:
    TwoLevelParams(double eps, double mu, double lambda, double delta);

    double eps() const noexcept { return eps_; }
    double mu() const noexcept { return mu_; }
    double lambda() const noexcept { return lambda_; }
    double delta() const noexcept { return delta_; }

    /// Transverse decay rate 2δ + (λ + μ)/2. Dephasing D(Z, ·) damps
    /// coherences at 2δ; decay and excitation contribute half their rates.
    double beta() const noexcept;
    /// Stationary z: (μ − λ)/(μ + λ). Decay pushes toward |0⟩ (z = +1).
    /// Throws DomainError when μ + λ = 0.
    double z_inf() const;

    LindbladModel model() const;

private:
    double eps_, mu_, lambda_, delta_;
};

struct StepDiagnostics {
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<StepDiagnostics> diagnostics;
    std::string method;
};

/// Stability thresholds for RK4; exceeded at any step → StabilityError.
inline constexpr double kRk4TraceLimit = 1e-6;
inline constexpr double kRk4NegativityLimit = 1e-6;

/// Classic RK4 on ρ̇ = L(ρ) with n = floor(t_final/dt) steps of size dt.
/// Each step is re-Hermitized; trace is not renormalized and negative
/// eigenvalues are never clipped. Every sample_every-th step (and step 0) is
/// kept in the trajectory.
Trajectory evolve_rk4(const LindbladModel& model, const DensityMatrix& rho0, double t_final,
                      double dt, int sample_every = 1);

/// unstack(expm(t·S)·stack(ρ₀)), re-Hermitized.
DensityMatrix evolve_exact(const Superoperator& superop, const DensityMatrix& rho0, double t,
                           ExpmReport* report = nullptr);

/// Exact evolution sampled on the same grid evolve_rk4 would produce, with
/// each sample computed from ρ₀ directly.
Trajectory evolve_exact_trajectory(const LindbladModel& model, const DensityMatrix& rho0,
                                   double t_final, double dt, int sample_every = 1);

/// Closed-form Bloch vector at time t:
///   z(t) = (z(0) − z∞) e^{−(λ+μ)t} + z∞,   ζ(t) = ζ(0) e^{−(iε+β)t}.
/// Throws DomainError when λ + μ = 0 (use evolve_exact instead) or t < 0.
BlochState two_level_analytic(const TwoLevelParams& params, const BlochState& b0, double t);

BlochState bloch_from_rho(const DensityMatrix& rho);
/// ρ = (I + xX + yY + zZ)/2; throws DomainError when |b| > 1 + 1e−9.
DensityMatrix rho_from_bloch(const BlochState& b);

/// Number of steps evolve_rk4 takes for (t_final, dt).
long step_count(double t_final, double dt);

} // namespace oqs
