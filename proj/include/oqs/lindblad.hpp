// lindblad.hpp: Lindblad generators, their adjoints and vectorized forms
//
// L(ρ)  = −i[H, ρ] + Σ_k γ_k D(B_k, ρ),   D(B, ρ)  = BρB† − ½{B†B, ρ}
// L*(M) = +i[H, M] + Σ_k γ_k D*(B_k, M),  D*(B, M) = B†MB − ½{B†B, M}
//
// L* is the adjoint of L under the pairing ⟨M, ρ⟩ = Tr(Mρ), so
// Tr(L(ρ) M) = Tr(ρ L*(M)) for every ρ and M.

#pragma once

#include <string>
#include <vector>

#include "oqs/matcore.hpp"

namespace oqs {

/// One dissipative process. The rate is kept separate from the operator so
/// currents can be reported per physical process.
struct JumpChannel {
    ComplexMatrix op;
    double rate = 0.0;
    std::string name;
};

class LindbladModel {
public:
    /// Validates: H square, finite and Hermitian within hermiticity_tol; every
    /// channel operator has H's dimension and every rate is finite and ≥ 0.
    LindbladModel(ComplexMatrix hamiltonian, std::vector<JumpChannel> channels,
                  double hermiticity_tol = tol::kHermiticity);

    Index dim() const noexcept { return hamiltonian_.rows(); }
    const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
    const std::vector<JumpChannel>& channels() const noexcept { return channels_; }

    /// Label used in reports: the channel name, or its index when unnamed.
    std::string channel_label(std::size_t k) const;

private:
    ComplexMatrix hamiltonian_;
    std::vector<JumpChannel> channels_;
};

/// Linear map on matrices in column-stacked form: stack(Φ(ρ)) = matrix·stack(ρ).
/// matrix is (dim_out²)×(dim_in²).
struct Superoperator {
    Index dim_in = 0;
    Index dim_out = 0;
    ComplexMatrix matrix;

    ComplexMatrix apply(const ComplexMatrix& rho) const;
};

ComplexMatrix dissipator(const ComplexMatrix& b, const ComplexMatrix& rho);
ComplexMatrix adjoint_dissipator(const ComplexMatrix& b, const ComplexMatrix& m);

ComplexMatrix lindbladian_apply(const LindbladModel& model, const ComplexMatrix& rho);
ComplexMatrix adjoint_lindbladian_apply(const LindbladModel& model, const ComplexMatrix& m);

/// Column-stacked matrix of L, assembled from stack(AρB) = (Bᵀ⊗A)·stack(ρ).
Superoperator to_superoperator(const LindbladModel& model);

} // namespace oqs
