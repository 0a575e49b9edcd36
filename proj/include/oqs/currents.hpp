// currents.hpp: relaxation-current observables
//
// For a projection P, the population rate d/dt Tr(ρP) equals Tr(ρ L*(P)).
// Splitting L* term by term gives one Hermitian observable per jump channel,
//
//     J_k(P) = γ_k D*(B_k, P),
//
// whose expectation is the contribution of process k to that rate. Because
// D*(B, I) = 0, J_k(P) = −J_k(I − P): the current into P is the current out
// of its complement.

#pragma once

#include <string>
#include <vector>

#include "oqs/density.hpp"
#include "oqs/lindblad.hpp"

namespace oqs {

struct CurrentObservable {
    ComplexMatrix observable;
    std::size_t channel_index = 0;
    ComplexMatrix target_projection;
};

/// Unitary change of basis; columns are the new basis vectors written in the
/// old basis.
class BasisChange {
public:
    explicit BasisChange(ComplexMatrix unitary, double tol = 1e-12);
    const ComplexMatrix& unitary() const noexcept { return u_; }

private:
    ComplexMatrix u_;
};

/// Throws ProjectionError unless ‖P² − P‖_F and ‖P − P†‖_F are both ≤ tol.
void require_projection(const ComplexMatrix& p, double tol = tol::kProjection);

/// γ·D*(B, P) for a single channel. channel_index is recorded as given.
CurrentObservable current_observable(const JumpChannel& channel, const ComplexMatrix& p,
                                     std::size_t channel_index = 0);

/// One observable per channel of the model, in channel order.
std::vector<CurrentObservable> current_observables(const LindbladModel& model,
                                                   const ComplexMatrix& p);

/// Tr(ρ L*(P)). Throws HermiticityError if the imaginary part exceeds 1e−12.
double population_rate(const LindbladModel& model, const DensityMatrix& rho,
                       const ComplexMatrix& p);

struct RateTerm {
    std::string label;
    double value = 0.0;
};

/// Terms of Tr(ρ L*(P)): first "unitary" = Tr(ρ·i[H,P]), then one
/// "channel[k]:<label>" entry per channel. The entries sum to population_rate.
std::vector<RateTerm> rate_decomposition(const LindbladModel& model, const DensityMatrix& rho,
                                         const ComplexMatrix& p);

/// U†MU: the components of M in the new basis.
ComplexMatrix transform_observable(const ComplexMatrix& m, const BasisChange& basis);

// ---------------------------------------------------------------------------
// Prebuilt models
// ---------------------------------------------------------------------------

/// Two-level emitter. H = −(eps/2)Z with |0⟩ the ground state; channels in
/// order: radiative decay (|0⟩⟨1|, mu), excitation (|1⟩⟨0|, lambda),
/// dephasing (Z, delta).
LindbladModel build_two_level(double eps, double mu, double lambda, double delta);

/// Three-level system in the angular-momentum basis (|0⟩, |1⟩, |2⟩) with
/// nearly degenerate excited states:
///   H = |1⟩⟨1| + |2⟩⟨2| + eps(|1⟩⟨2| + |2⟩⟨1|)
/// channels: "1->0" (|0⟩⟨1|, mu10), "2->1" (|1⟩⟨2|, mu21).
/// Prints a warning to stderr when eps > 0.5.
LindbladModel build_three_level(double eps, double mu10, double mu21);

/// Projection onto the H-eigenvalue 1 − eps of the three-level model:
/// ½(|1⟩⟨1| + |2⟩⟨2| − |1⟩⟨2| − |2⟩⟨1|).
ComplexMatrix three_level_p1();

/// Energy basis |0), |1) = (|1⟩ − |2⟩)/√2, |2) = (|1⟩ + |2⟩)/√2.
BasisChange three_level_energy_basis();

} // namespace oqs
