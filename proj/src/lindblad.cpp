#include "oqs/lindblad.hpp"

#include <cmath>

namespace oqs {

LindbladModel::LindbladModel(ComplexMatrix hamiltonian, std::vector<JumpChannel> channels,
                             double hermiticity_tol)
    : hamiltonian_(std::move(hamiltonian)), channels_(std::move(channels))
{
    require_square(hamiltonian_, "LindbladModel hamiltonian");
    require_finite(hamiltonian_, "LindbladModel hamiltonian");
    if (!is_hermitian(hamiltonian_, hermiticity_tol)) {
        throw HermiticityError("LindbladModel: hamiltonian is not Hermitian");
    }
    for (std::size_t k = 0; k < channels_.size(); ++k) {
        const auto& ch = channels_[k];
        const std::string where = "LindbladModel channel " + channel_label(k);
        if (ch.op.rows() != dim() || ch.op.cols() != dim()) {
            throw ShapeError(where + ": operator is " + std::to_string(ch.op.rows()) + "x" +
                             std::to_string(ch.op.cols()) + ", model dimension is " +
                             std::to_string(dim()));
        }
        require_finite(ch.op, where.c_str());
        if (!std::isfinite(ch.rate) || ch.rate < 0.0) {
            throw DomainError(where + ": rate must be finite and nonnegative");
        }
    }
}

std::string LindbladModel::channel_label(std::size_t k) const
{
    if (k < channels_.size() && !channels_[k].name.empty()) return channels_[k].name;
    return std::to_string(k);
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const
{
    if (rho.rows() != dim_in || rho.cols() != dim_in) {
        throw ShapeError("Superoperator::apply: input is " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + ", expected dimension " +
                         std::to_string(dim_in));
    }
    return unstack(matrix * stack(rho), dim_out, dim_out);
}

ComplexMatrix dissipator(const ComplexMatrix& b, const ComplexMatrix& rho)
{
    require_same_square(b, rho, "dissipator");
    const ComplexMatrix bd = b.adjoint();
    const ComplexMatrix bdb = bd * b;
    return b * rho * bd - 0.5 * (bdb * rho + rho * bdb);
}

ComplexMatrix adjoint_dissipator(const ComplexMatrix& b, const ComplexMatrix& m)
{
    require_same_square(b, m, "adjoint_dissipator");
    const ComplexMatrix bd = b.adjoint();
    const ComplexMatrix bdb = bd * b;
    return bd * m * b - 0.5 * (bdb * m + m * bdb);
}

ComplexMatrix lindbladian_apply(const LindbladModel& model, const ComplexMatrix& rho)
{
    require_same_square(model.hamiltonian(), rho, "lindbladian_apply");
    ComplexMatrix out = -kI * commutator(model.hamiltonian(), rho);
    for (const auto& ch : model.channels()) {
        out += ch.rate * dissipator(ch.op, rho);
    }
    return out;
}

ComplexMatrix adjoint_lindbladian_apply(const LindbladModel& model, const ComplexMatrix& m)
{
    require_same_square(model.hamiltonian(), m, "adjoint_lindbladian_apply");
    ComplexMatrix out = kI * commutator(model.hamiltonian(), m);
    for (const auto& ch : model.channels()) {
        out += ch.rate * adjoint_dissipator(ch.op, m);
    }
    return out;
}

Superoperator to_superoperator(const LindbladModel& model)
{
    const Index d = model.dim();
    const ComplexMatrix id = identity(d);
    const ComplexMatrix& h = model.hamiltonian();

    // −i(Hρ − ρH) → −i(I⊗H − Hᵀ⊗I)
    ComplexMatrix s = -kI * (kron(id, h) - kron(h.transpose(), id));
    for (const auto& ch : model.channels()) {
        const ComplexMatrix bdb = ch.op.adjoint() * ch.op;
        // BρB† → conj(B)⊗B;  B†Bρ → I⊗B†B;  ρB†B → (B†B)ᵀ⊗I
        s += ch.rate * (kron(ch.op.conjugate(), ch.op) - 0.5 * kron(id, bdb) -
                        0.5 * kron(bdb.transpose(), id));
    }
    return {d, d, std::move(s)};
}

} // namespace oqs
