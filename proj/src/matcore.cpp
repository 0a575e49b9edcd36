// matcore.cpp: dense complex matrix primitives

#include "oqs/matcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace oqs {

void require_square(const ComplexMatrix& m, const char* what)
{
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ShapeError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b, const char* what)
{
    require_square(a, what);
    require_square(b, what);
    if (a.rows() != b.rows()) {
        throw ShapeError(std::string(what) + ": dimension mismatch " + std::to_string(a.rows()) +
                         " vs " + std::to_string(b.rows()));
    }
}

void require_finite(const ComplexMatrix& m, const char* what)
{
    if (!m.allFinite()) {
        throw DomainError(std::string(what) + ": matrix has non-finite entries");
    }
}

double tolerance_scale(const ComplexMatrix& m)
{
    return std::max(1.0, m.norm());
}

bool is_hermitian(const ComplexMatrix& m, double tol)
{
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= tol * tolerance_scale(m);
}

bool is_projection(const ComplexMatrix& p, double tol)
{
    if (p.rows() != p.cols()) return false;
    return (p * p - p).norm() <= tol && (p - p.adjoint()).norm() <= tol;
}

bool is_unitary(const ComplexMatrix& u, double tol)
{
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

ComplexMatrix hermitize(const ComplexMatrix& m)
{
    return 0.5 * (m + m.adjoint());
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_square(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_square(a, b, "anticommutator");
    return a * b + b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    const Index rb = b.rows();
    const Index cb = b.cols();
    ComplexMatrix out(a.rows() * rb, a.cols() * cb);
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw ShapeError("trace_product: incompatible shapes");
    }
    // Tr(ab) = Σ_ij a(i,j) b(j,i)
    return (a.array() * b.transpose().array()).sum();
}

HermitianEigenResult hermitian_eig(const ComplexMatrix& m, double tol)
{
    require_square(m, "hermitian_eig");
    require_finite(m, "hermitian_eig");
    if (!is_hermitian(m, tol)) {
        throw HermiticityError("hermitian_eig: input is not Hermitian (‖M − M†‖_F = " +
                               std::to_string((m - m.adjoint()).norm()) + ")");
    }
    // The solver reads only the lower triangle.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m));
    if (solver.info() != Eigen::Success) {
        throw NumericError("hermitian_eig: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& m, double tol)
{
    return hermitian_eig(m, tol).eigenvalues(0);
}

namespace {

// Padé-13 coefficients and the θ₁₃ threshold of Higham (2005).
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

double one_norm(const ComplexMatrix& m)
{
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

} // namespace

ComplexMatrix expm(const ComplexMatrix& m, ExpmReport* report)
{
    require_square(m, "expm");
    if (!m.allFinite()) throw NumericError("expm: non-finite input");

    const Index n = m.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    int s = 0;
    const double norm = one_norm(m);
    if (norm > kTheta13) {
        s = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    }
    const ComplexMatrix a = m / std::ldexp(1.0, s);

    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const auto& b = kPade13;

    const ComplexMatrix u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
    const ComplexMatrix u = a * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const ComplexMatrix v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
    const ComplexMatrix v = a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

    ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < s; ++k) {
        r = r * r;
    }
    if (!r.allFinite()) throw NumericError("expm: result is not finite");

    if (report != nullptr) {
        report->method = "pade13-scaling-squaring";
        report->squarings = s;
    }
    return r;
}

ComplexVector stack(const ComplexMatrix& m)
{
    // Eigen stores column-major, which is exactly column stacking.
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unstack(const ComplexVector& v, Index rows, Index cols)
{
    if (v.size() != rows * cols) {
        throw ShapeError("unstack: vector length " + std::to_string(v.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexMatrix identity(Index d)
{
    return ComplexMatrix::Identity(d, d);
}

ComplexVector ket(Index i, Index d)
{
    if (i < 0 || i >= d) throw ShapeError("ket: index out of range");
    ComplexVector v = ComplexVector::Zero(d);
    v(i) = 1.0;
    return v;
}

ComplexMatrix ket_bra(Index i, Index j, Index d)
{
    if (i < 0 || j < 0 || i >= d || j >= d) throw ShapeError("ket_bra: index out of range");
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

namespace pauli {

ComplexMatrix x()
{
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix y()
{
    ComplexMatrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

ComplexMatrix z()
{
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

} // namespace pauli

} // namespace oqs
