#include "oqs/currents.hpp"

#include <cmath>
#include <iostream>

namespace oqs {

namespace {

constexpr double kImagTol = 1e-12;

double real_checked(Complex value, const char* what)
{
    if (std::abs(value.imag()) > kImagTol) {
        throw HermiticityError(std::string(what) + ": imaginary part " +
                               std::to_string(value.imag()) + " exceeds tolerance");
    }
    return value.real();
}

void require_rate(double rate, const char* name)
{
    if (!std::isfinite(rate) || rate < 0.0) {
        throw DomainError(std::string("rate ") + name + " must be finite and nonnegative");
    }
}

} // namespace

BasisChange::BasisChange(ComplexMatrix unitary, double tol) : u_(std::move(unitary))
{
    require_square(u_, "BasisChange");
    if (!is_unitary(u_, tol)) {
        throw UnitarityError("BasisChange: matrix is not unitary (‖U†U − I‖_F = " +
                             std::to_string((u_.adjoint() * u_ - identity(u_.rows())).norm()) +
                             ")");
    }
}

void require_projection(const ComplexMatrix& p, double tol)
{
    require_square(p, "projection");
    if (!is_projection(p, tol)) {
        throw ProjectionError("matrix is not an orthogonal projection");
    }
}

CurrentObservable current_observable(const JumpChannel& channel, const ComplexMatrix& p,
                                     std::size_t channel_index)
{
    require_same_square(channel.op, p, "current_observable");
    require_projection(p);
    return {channel.rate * adjoint_dissipator(channel.op, p), channel_index, p};
}

std::vector<CurrentObservable> current_observables(const LindbladModel& model,
                                                   const ComplexMatrix& p)
{
    std::vector<CurrentObservable> out;
    out.reserve(model.channels().size());
    for (std::size_t k = 0; k < model.channels().size(); ++k) {
        out.push_back(current_observable(model.channels()[k], p, k));
    }
    return out;
}

double population_rate(const LindbladModel& model, const DensityMatrix& rho,
                       const ComplexMatrix& p)
{
    require_same_square(model.hamiltonian(), p, "population_rate");
    require_same_square(rho.matrix(), p, "population_rate");
    require_projection(p);
    return real_checked(trace_product(rho.matrix(), adjoint_lindbladian_apply(model, p)),
                        "population_rate");
}

std::vector<RateTerm> rate_decomposition(const LindbladModel& model, const DensityMatrix& rho,
                                         const ComplexMatrix& p)
{
    require_same_square(model.hamiltonian(), p, "rate_decomposition");
    require_same_square(rho.matrix(), p, "rate_decomposition");
    require_projection(p);

    std::vector<RateTerm> terms;
    terms.reserve(model.channels().size() + 1);
    const ComplexMatrix unitary = kI * commutator(model.hamiltonian(), p);
    terms.push_back({"unitary", real_checked(trace_product(rho.matrix(), unitary),
                                             "rate_decomposition")});
    for (std::size_t k = 0; k < model.channels().size(); ++k) {
        const auto& ch = model.channels()[k];
        const ComplexMatrix j = ch.rate * adjoint_dissipator(ch.op, p);
        terms.push_back({"channel[" + std::to_string(k) + "]:" + model.channel_label(k),
                         real_checked(trace_product(rho.matrix(), j), "rate_decomposition")});
    }
    return terms;
}

ComplexMatrix transform_observable(const ComplexMatrix& m, const BasisChange& basis)
{
    require_same_square(m, basis.unitary(), "transform_observable");
    return basis.unitary().adjoint() * m * basis.unitary();
}

LindbladModel build_two_level(double eps, double mu, double lambda, double delta)
{
    if (!std::isfinite(eps)) throw DomainError("build_two_level: eps must be finite");
    require_rate(mu, "mu");
    require_rate(lambda, "lambda");
    require_rate(delta, "delta");

    const ComplexMatrix lower = ket_bra(0, 1, 2);
    std::vector<JumpChannel> channels{
        {lower, mu, "radiative"},
        {lower.adjoint(), lambda, "excitation"},
        // D is invariant under B → −B, so Z stands in for H/|H| = −Z.
        {pauli::z(), delta, "dephasing"},
    };
    return LindbladModel(-0.5 * eps * pauli::z(), std::move(channels));
}

LindbladModel build_three_level(double eps, double mu10, double mu21)
{
    if (!std::isfinite(eps)) throw DomainError("build_three_level: eps must be finite");
    require_rate(mu10, "mu10");
    require_rate(mu21, "mu21");
    if (eps > 0.5) {
        std::cerr << "warning: build_three_level: eps = " << eps
                  << " is not small; the excited doublet is no longer nearly degenerate\n";
    }

    ComplexMatrix h = ket_bra(1, 1, 3) + ket_bra(2, 2, 3);
    h += eps * (ket_bra(1, 2, 3) + ket_bra(2, 1, 3));
    std::vector<JumpChannel> channels{
        {ket_bra(0, 1, 3), mu10, "1->0"},
        {ket_bra(1, 2, 3), mu21, "2->1"},
    };
    return LindbladModel(std::move(h), std::move(channels));
}

ComplexMatrix three_level_p1()
{
    return 0.5 * (ket_bra(1, 1, 3) + ket_bra(2, 2, 3) - ket_bra(1, 2, 3) - ket_bra(2, 1, 3));
}

BasisChange three_level_energy_basis()
{
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix u = ComplexMatrix::Zero(3, 3);
    u(0, 0) = 1.0;
    u(1, 1) = r;
    u(2, 1) = -r;
    u(1, 2) = r;
    u(2, 2) = r;
    return BasisChange(std::move(u));
}

} // namespace oqs
