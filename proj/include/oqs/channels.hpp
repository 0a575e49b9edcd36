// channels.hpp: linear maps on matrices and their diagnostics
//
// Maps are stored as superoperators in the column-stacking convention shared
// with lindblad.hpp. The Choi matrix is unnormalized with the input slot
// first:  C = Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|).  Φ is completely positive iff C ⪰ 0.

#pragma once

#include <Eigen/Dense>

#include "oqs/lindblad.hpp"

namespace oqs {

/// Normalized pure state.
class StateVector {
public:
    explicit StateVector(ComplexVector amplitudes, double tol = 1e-12);

    const ComplexVector& amplitudes() const noexcept { return amps_; }
    Index dim() const noexcept { return amps_.size(); }
    ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

private:
    ComplexVector amps_;
};

class MatrixMap {
public:
    MatrixMap(Index dim_in, Index dim_out, ComplexMatrix superop);
    explicit MatrixMap(Superoperator superop);

    Index dim_in() const noexcept { return s_.dim_in; }
    Index dim_out() const noexcept { return s_.dim_out; }
    const Superoperator& superoperator() const noexcept { return s_; }

private:
    Superoperator s_;
};

struct ChoiMatrix {
    Index dim_in = 0;
    Index dim_out = 0;
    ComplexMatrix matrix;
};

struct CpReport {
    bool completely_positive = false;
    double min_eigenvalue = 0.0;
    RealVector spectrum; // ascending
};

struct BlochAction {
    Eigen::Matrix3d linear;
    Eigen::Vector3d translation;

    double determinant() const { return linear.determinant(); }
};

struct HeraldOutcome {
    double probability = 0.0;
    StateVector bob_state;
};

ComplexMatrix apply_map(const MatrixMap& phi, const ComplexMatrix& rho);

/// phi_second ∘ phi_first
MatrixMap compose(const MatrixMap& phi_second, const MatrixMap& phi_first);

ChoiMatrix choi(const MatrixMap& phi);

/// Spectrum of the Choi matrix and the verdict λ_min ≥ −tol. Throws
/// HermiticityError when the Choi matrix is not Hermitian, i.e. the map does
/// not preserve Hermiticity.
CpReport is_completely_positive(const MatrixMap& phi, double tol = 1e-10);

/// max_ij |Tr Φ(E_ij) − Tr E_ij|
double trace_preservation_defect(const MatrixMap& phi);
bool is_trace_preserving(const MatrixMap& phi, double tol = 1e-10);

MatrixMap identity_map(Index d);
MatrixMap transpose_map(Index d);

/// e^{tL} as a map.
MatrixMap semigroup_channel(const LindbladModel& model, double t);

/// Alice holds the first qubit of (|00⟩ + |11⟩)/√2 and succeeds in a
/// projective test onto psi. Returns the success probability and Bob's
/// normalized post-test state, which is conj(psi).
HeraldOutcome herald(const StateVector& psi);

/// Alice-state → Bob-state map reconstructed by running herald on |0⟩, |1⟩,
/// |+⟩, |+i⟩ and solving for the superoperator. The four input projectors
/// span the qubit operators, so the solve is exact; a reconstruction that
/// does not reproduce the inputs raises ConsistencyError.
MatrixMap heralding_as_map();

/// Affine action on Bloch vectors, bloch(Φ(ρ)) = R·bloch(ρ) + t, read off
/// from Pauli expectations of Φ(I/2) and Φ(σ)/2.
BlochAction bloch_action(const MatrixMap& phi);

} // namespace oqs
