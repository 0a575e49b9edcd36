#include "oqs/channels.hpp"

#include <array>
#include <cmath>

namespace oqs {

StateVector::StateVector(ComplexVector amplitudes, double tol) : amps_(std::move(amplitudes))
{
    if (amps_.size() == 0) throw ShapeError("StateVector: empty amplitude vector");
    if (!amps_.allFinite()) throw DomainError("StateVector: non-finite amplitudes");
    const double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol) {
        throw DomainError("StateVector: amplitudes are not normalized (Σ|a|² = " +
                          std::to_string(norm2) + ")");
    }
}

MatrixMap::MatrixMap(Index dim_in, Index dim_out, ComplexMatrix superop)
    : s_{dim_in, dim_out, std::move(superop)}
{
    if (dim_in <= 0 || dim_out <= 0) throw ShapeError("MatrixMap: dimensions must be positive");
    if (s_.matrix.rows() != dim_out * dim_out || s_.matrix.cols() != dim_in * dim_in) {
        throw ShapeError("MatrixMap: superoperator must be " + std::to_string(dim_out * dim_out) +
                         "x" + std::to_string(dim_in * dim_in));
    }
}

MatrixMap::MatrixMap(Superoperator superop)
    : MatrixMap(superop.dim_in, superop.dim_out, std::move(superop.matrix))
{
}

ComplexMatrix apply_map(const MatrixMap& phi, const ComplexMatrix& rho)
{
    return phi.superoperator().apply(rho);
}

MatrixMap compose(const MatrixMap& phi_second, const MatrixMap& phi_first)
{
    if (phi_second.dim_in() != phi_first.dim_out()) {
        throw ShapeError("compose: inner map output does not match outer map input");
    }
    return MatrixMap(phi_first.dim_in(), phi_second.dim_out(),
                     phi_second.superoperator().matrix * phi_first.superoperator().matrix);
}

ChoiMatrix choi(const MatrixMap& phi)
{
    const Index din = phi.dim_in();
    const Index dout = phi.dim_out();
    ComplexMatrix c = ComplexMatrix::Zero(din * dout, din * dout);
    for (Index i = 0; i < din; ++i) {
        for (Index j = 0; j < din; ++j) {
            const ComplexMatrix eij = ket_bra(i, j, din);
            c += kron(eij, apply_map(phi, eij));
        }
    }
    return {din, dout, std::move(c)};
}

CpReport is_completely_positive(const MatrixMap& phi, double tol)
{
    const ChoiMatrix c = choi(phi);
    if (!is_hermitian(c.matrix)) {
        throw HermiticityError("is_completely_positive: Choi matrix is not Hermitian; the map "
                               "does not preserve Hermiticity");
    }
    const auto eig = hermitian_eig(c.matrix);
    CpReport report;
    report.spectrum = eig.eigenvalues;
    report.min_eigenvalue = eig.eigenvalues(0);
    report.completely_positive = report.min_eigenvalue >= -tol;
    return report;
}

double trace_preservation_defect(const MatrixMap& phi)
{
    const Index din = phi.dim_in();
    double defect = 0.0;
    for (Index i = 0; i < din; ++i) {
        for (Index j = 0; j < din; ++j) {
            const ComplexMatrix eij = ket_bra(i, j, din);
            defect = std::max(defect, std::abs(apply_map(phi, eij).trace() - eij.trace()));
        }
    }
    return defect;
}

bool is_trace_preserving(const MatrixMap& phi, double tol)
{
    return trace_preservation_defect(phi) <= tol;
}

MatrixMap identity_map(Index d)
{
    return MatrixMap(d, d, ComplexMatrix::Identity(d * d, d * d));
}

MatrixMap transpose_map(Index d)
{
    if (d <= 0) throw ShapeError("transpose_map: dimension must be positive");
    // stack(ρᵀ)[i + d·j] = ρ(j, i) = stack(ρ)[j + d·i]
    ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            s(i + d * j, j + d * i) = 1.0;
        }
    }
    return MatrixMap(d, d, std::move(s));
}

MatrixMap semigroup_channel(const LindbladModel& model, double t)
{
    if (!std::isfinite(t) || t < 0.0) throw DomainError("semigroup_channel: t must be >= 0");
    const Superoperator s = to_superoperator(model);
    if (t == 0.0) return identity_map(model.dim());
    return MatrixMap(s.dim_in, s.dim_out, expm(t * s.matrix));
}

HeraldOutcome herald(const StateVector& psi)
{
    if (psi.dim() != 2) throw DomainError("herald: Alice's test must be a qubit state");

    // (|00⟩ + |11⟩)/√2 with Alice in the first tensor slot.
    const ComplexVector bell = (kron(ket(0, 2), ket(0, 2)) + kron(ket(1, 2), ket(1, 2))) /
                               std::sqrt(2.0);
    // (⟨ψ| ⊗ I)|β⟩
    ComplexVector bob = ComplexVector::Zero(2);
    for (Index a = 0; a < 2; ++a) {
        for (Index b = 0; b < 2; ++b) {
            bob(b) += std::conj(psi.amplitudes()(a)) * bell(a * 2 + b);
        }
    }
    const double probability = bob.squaredNorm();
    if (!(probability > 0.0)) throw NumericError("herald: test has zero success probability");
    return {probability, StateVector(bob / std::sqrt(probability))};
}

MatrixMap heralding_as_map()
{
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<ComplexVector, 4> probes = {
        ket(0, 2),
        ket(1, 2),
        ComplexVector{{r, r}},
        ComplexVector{{Complex{r, 0.0}, Complex{0.0, r}}},
    };

    ComplexMatrix inputs(4, 4);
    ComplexMatrix outputs(4, 4);
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const StateVector alice(probes[k]);
        const HeraldOutcome outcome = herald(alice);
        inputs.col(static_cast<Index>(k)) = stack(alice.projector());
        outputs.col(static_cast<Index>(k)) = stack(outcome.bob_state.projector());
    }

    // S·inputs = outputs
    const Eigen::FullPivLU<ComplexMatrix> lu(inputs.transpose());
    if (!lu.isInvertible()) {
        throw ConsistencyError("heralding_as_map: tomographic probes are not informationally complete");
    }
    const ComplexMatrix s = lu.solve(outputs.transpose()).transpose();
    const double residual = (s * inputs - outputs).norm();
    if (residual > 1e-10) {
        throw ConsistencyError("heralding_as_map: reconstruction residual " +
                               std::to_string(residual));
    }
    return MatrixMap(2, 2, s);
}

BlochAction bloch_action(const MatrixMap& phi)
{
    if (phi.dim_in() != 2 || phi.dim_out() != 2) {
        throw UnsupportedDimensionError("bloch_action: qubit maps only");
    }
    const std::array<ComplexMatrix, 3> sigma = {pauli::x(), pauli::y(), pauli::z()};

    const auto bloch_of = [&](const ComplexMatrix& m) {
        if (!is_hermitian(m)) {
            throw HermiticityError("bloch_action: map does not preserve Hermiticity");
        }
        Eigen::Vector3d v;
        for (int i = 0; i < 3; ++i) v(i) = trace_product(sigma[i], m).real();
        return v;
    };

    BlochAction action;
    action.translation = bloch_of(apply_map(phi, 0.5 * identity(2)));
    for (int j = 0; j < 3; ++j) {
        action.linear.col(j) = bloch_of(apply_map(phi, 0.5 * sigma[j]));
    }
    return action;
}

} // namespace oqs
