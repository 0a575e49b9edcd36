// density.hpp: validated density matrices

#pragma once

#include "oqs/matcore.hpp"

namespace oqs {

/// Acceptance thresholds used when wrapping a matrix as a state.
struct DensityTolerance {
    double hermiticity = tol::kHermiticity; // relative, see tolerance_scale
    double trace = 1e-9;                    // |Tr ρ − 1|
    double psd = tol::kPsd;                 // λ_min ≥ −psd·max(1, ‖ρ‖_F)
};

/// Hermitian, positive semidefinite, unit-trace matrix. The stored matrix is
/// exactly Hermitian: construction replaces it with (ρ + ρ†)/2.
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix& rho, const DensityTolerance& tol = {});

    static DensityMatrix pure(const ComplexVector& psi);
    static DensityMatrix basis_state(Index i, Index d);
    static DensityMatrix maximally_mixed(Index d);

    const ComplexMatrix& matrix() const noexcept { return rho_; }
    Index dim() const noexcept { return rho_.rows(); }

    /// |Tr ρ − 1|
    double trace_error() const;
    double min_eigenvalue() const;

private:
    ComplexMatrix rho_;
};

} // namespace oqs
