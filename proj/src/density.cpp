#include "oqs/density.hpp"

#include <cmath>
#include <string>

namespace oqs {

DensityMatrix::DensityMatrix(const ComplexMatrix& rho, const DensityTolerance& tol)
{
    require_square(rho, "DensityMatrix");
    require_finite(rho, "DensityMatrix");
    if (!is_hermitian(rho, tol.hermiticity)) {
        throw HermiticityError("DensityMatrix: matrix is not Hermitian");
    }
    rho_ = hermitize(rho);
    const double terr = std::abs(rho_.trace() - 1.0);
    if (terr > tol.trace) {
        throw DomainError("DensityMatrix: trace deviates from 1 by " + std::to_string(terr));
    }
    const double lmin = oqs::min_eigenvalue(rho_);
    if (lmin < -tol.psd * tolerance_scale(rho_)) {
        throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(lmin));
    }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi)
{
    const double n = psi.norm();
    if (!(n > 0.0) || !psi.allFinite()) throw DomainError("DensityMatrix::pure: zero or non-finite vector");
    const ComplexVector unit = psi / n;
    return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::basis_state(Index i, Index d)
{
    return DensityMatrix(ket_bra(i, i, d));
}

DensityMatrix DensityMatrix::maximally_mixed(Index d)
{
    return DensityMatrix(identity(d) / static_cast<double>(d));
}

double DensityMatrix::trace_error() const
{
    return std::abs(rho_.trace() - 1.0);
}

double DensityMatrix::min_eigenvalue() const
{
    return oqs::min_eigenvalue(rho_);
}

} // namespace oqs
