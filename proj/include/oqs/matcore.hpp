// matcore.hpp: dense complex matrix primitives shared by every module

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace oqs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Error hierarchy. Every failure raised by the library derives from Error so
// callers can catch one type; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class ShapeError : public Error { using Error::Error; };
class HermiticityError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class ProjectionError : public Error { using Error::Error; };
class UnitarityError : public Error { using Error::Error; };
class NumericError : public Error { using Error::Error; };
class StabilityError : public Error { using Error::Error; };
class ConsistencyError : public Error { using Error::Error; };
class UnsupportedDimensionError : public Error { using Error::Error; };

namespace tol {
/// Relative hermiticity tolerance: ‖M − M†‖_F ≤ kHermiticity·max(1, ‖M‖_F).
inline constexpr double kHermiticity = 1e-10;
/// PSD tolerance: λ_min ≥ −kPsd·max(1, ‖M‖_F).
inline constexpr double kPsd = 1e-10;
inline constexpr double kProjection = 1e-10;
} // namespace tol

// ---------------------------------------------------------------------------
// Validation helpers
// ---------------------------------------------------------------------------

void require_square(const ComplexMatrix& m, const char* what);
void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);
void require_finite(const ComplexMatrix& m, const char* what);

/// max(1, ‖m‖_F), the scale used by every relative tolerance in the library.
double tolerance_scale(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = tol::kHermiticity);
bool is_projection(const ComplexMatrix& p, double tol = tol::kProjection);
bool is_unitary(const ComplexMatrix& u, double tol);

/// (m + m†)/2
ComplexMatrix hermitize(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

/// ab − ba. Throws ShapeError unless both are square with equal dimension.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// ab + ba. Throws ShapeError unless both are square with equal dimension.
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, block convention (a⊗b)(i·rb+k, j·cb+l) = a(i,j)·b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(a·b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigenResult {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // orthonormal columns
};

/// Spectral decomposition of a Hermitian matrix. Deterministic for a fixed
/// input. Throws HermiticityError when ‖m − m†‖_F > tol·max(1, ‖m‖_F).
HermitianEigenResult hermitian_eig(const ComplexMatrix& m, double tol = tol::kHermiticity);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m, double tol = tol::kHermiticity);

struct ExpmReport {
    std::string method;
    int squarings = 0;
};

/// Matrix exponential by Padé-13 scaling and squaring. Throws NumericError on
/// non-finite input or output.
ComplexMatrix expm(const ComplexMatrix& m, ExpmReport* report = nullptr);

// ---------------------------------------------------------------------------
// Vectorization (column stacking): stack(ρ)[i + d·j] = ρ(i, j)
// ---------------------------------------------------------------------------

ComplexVector stack(const ComplexMatrix& m);
ComplexMatrix unstack(const ComplexVector& v, Index rows, Index cols);

// ---------------------------------------------------------------------------
// Common operators
// ---------------------------------------------------------------------------

ComplexMatrix identity(Index d);
/// |i⟩ as a d×1 column.
ComplexVector ket(Index i, Index d);
/// |i⟩⟨j| in dimension d.
ComplexMatrix ket_bra(Index i, Index j, Index d);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z(); // diag(1, −1): |0⟩ is the +1 eigenvector
} // namespace pauli

} // namespace oqs
