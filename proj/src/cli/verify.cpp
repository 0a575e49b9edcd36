#include "oqs/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

#include "oqs/channels.hpp"
#include "oqs/currents.hpp"
#include "oqs/evolve.hpp"
#include "oqs/random.hpp"

namespace oqs::cli {

namespace {

struct Measurement {
    std::string what;
    double value = 0.0;
    std::string bound;
    bool ok = false;
};

std::string sci(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

Measurement at_most(std::string what, double value, double limit)
{
    return {std::move(what), value, "<= " + sci(limit), value <= limit};
}

struct Context {
    Rng rng;
    const VerifyOptions& options;

    LindbladModel model(Index d)
    {
        if (!options.corrupt_hamiltonian) return random_model(d, rng);
        const LindbladModel clean = random_model(d, rng);
        ComplexMatrix h = clean.hamiltonian();
        h(0, d - 1) += 1.0; // breaks H = H†
        return LindbladModel(h, clean.channels());
    }
};

using Suite = std::function<Measurement(Context&)>;

// matcore ------------------------------------------------------------------

Measurement eig_reconstruction(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const Index d = uniform_index(2, 6, ctx.rng);
        const ComplexMatrix m = random_hermitian(d, ctx.rng);
        const auto eig = hermitian_eig(m);
        const ComplexMatrix back =
            eig.eigenvectors * eig.eigenvalues.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
        worst = std::max(worst, (m - back).norm() / tolerance_scale(m));
        if (!std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end())) {
            return {"eigenvalues ascending", 1.0, "sorted", false};
        }
    }
    return at_most("max ‖M − VΛV†‖_F / max(1,‖M‖_F)", worst, 1e-10);
}

Measurement commutator_identities(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const Index d = uniform_index(2, 6, ctx.rng);
        const ComplexMatrix a = random_ginibre(d, d, ctx.rng);
        const ComplexMatrix b = random_ginibre(d, d, ctx.rng);
        const double scale = a.norm() * b.norm();
        worst = std::max(worst, (commutator(a, b) + commutator(b, a)).norm() / (1e-14 * scale));
        worst = std::max(worst, std::abs(commutator(a, b).trace()) / (1e-12 * scale));
    }
    return at_most("max antisymmetry/trace defect in units of its tolerance", worst, 1.0);
}

// Gaussian-integer entries keep every product exact, so the block ordering
// can be compared bit for bit.
ComplexMatrix integer_matrix(Context& ctx)
{
    const Index r = uniform_index(1, 3, ctx.rng);
    const Index c = uniform_index(1, 3, ctx.rng);
    ComplexMatrix m(r, c);
    for (Index j = 0; j < c; ++j) {
        for (Index i = 0; i < r; ++i) {
            const double re = static_cast<double>(uniform_index(-9, 9, ctx.rng));
            const double im = static_cast<double>(uniform_index(-9, 9, ctx.rng));
            m(i, j) = Complex{re, im};
        }
    }
    return m;
}

Measurement kron_associativity(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 20; ++n) {
        const ComplexMatrix a = integer_matrix(ctx);
        const ComplexMatrix b = integer_matrix(ctx);
        const ComplexMatrix c = integer_matrix(ctx);
        worst = std::max(worst, (kron(kron(a, b), c) - kron(a, kron(b, c))).norm());
    }
    return at_most("max ‖(a⊗b)⊗c − a⊗(b⊗c)‖_F", worst, 0.0);
}

// lindblad -----------------------------------------------------------------

double model_scale(const LindbladModel& m)
{
    double s = 1.0 + m.hamiltonian().norm();
    for (const auto& ch : m.channels()) s += ch.rate * ch.op.squaredNorm();
    return s;
}

Measurement duality(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const Index d = uniform_index(2, 4, ctx.rng);
        const LindbladModel model = ctx.model(d);
        const ComplexMatrix rho = random_hermitian(d, ctx.rng);
        const ComplexMatrix m = random_hermitian(d, ctx.rng);
        const Complex lhs = trace_product(lindbladian_apply(model, rho), m);
        const Complex rhs = trace_product(rho, adjoint_lindbladian_apply(model, m));
        const double scale = model_scale(model) * rho.norm() * m.norm();
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return at_most("max |Tr(L(ρ)M) − Tr(ρL*(M))| / scale", worst, 1e-12);
}

Measurement generator_identities(Context& ctx)
{
    double trace = 0.0;
    double unital = 0.0;
    double herm = 0.0;
    for (int n = 0; n < 50; ++n) {
        const Index d = uniform_index(2, 4, ctx.rng);
        const LindbladModel model = ctx.model(d);
        const ComplexMatrix rho = random_density(d, ctx.rng).matrix();
        const ComplexMatrix l = lindbladian_apply(model, rho);
        trace = std::max(trace, std::abs(l.trace()));
        unital = std::max(unital, adjoint_lindbladian_apply(model, identity(d)).cwiseAbs().maxCoeff());
        herm = std::max(herm, (l - l.adjoint()).cwiseAbs().maxCoeff());
    }
    return at_most("max(|Tr L(ρ)|, |L*(I)|, |L(ρ) − L(ρ)†|)", std::max({trace, unital, herm}), 1e-13);
}

Measurement superoperator_faithfulness(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 20; ++n) {
        const Index d = uniform_index(2, 4, ctx.rng);
        const LindbladModel model = ctx.model(d);
        const Superoperator s = to_superoperator(model);
        for (int k = 0; k < 20; ++k) {
            const ComplexMatrix rho = random_density(d, ctx.rng).matrix();
            worst = std::max(worst, (s.apply(rho) - lindbladian_apply(model, rho)).norm());
        }
    }
    return at_most("max ‖unstack(S·stack(ρ)) − L(ρ)‖_F", worst, 1e-12);
}

// currents -----------------------------------------------------------------

Measurement sign_identity(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const Index d = uniform_index(2, 4, ctx.rng);
        const LindbladModel model = ctx.model(d);
        const ComplexMatrix p = random_projection(d, ctx.rng);
        const ComplexMatrix q = identity(d) - p;
        for (const auto& ch : model.channels()) {
            const ComplexMatrix sum = ch.rate * (adjoint_dissipator(ch.op, p) + adjoint_dissipator(ch.op, q));
            worst = std::max(worst, sum.cwiseAbs().maxCoeff());
            worst = std::max(worst, adjoint_dissipator(ch.op, identity(d)).cwiseAbs().maxCoeff());
        }
    }
    return at_most("max |γD*(B,P) + γD*(B,I−P)|, |D*(B,I)|", worst, 1e-13);
}

Measurement derivative_consistency(Context& ctx)
{
    constexpr double h = 1e-5;
    double worst = 0.0;
    for (int n = 0; n < 6; ++n) {
        const Index d = n < 2 ? 2 : uniform_index(2, 4, ctx.rng);
        const LindbladModel model = n < 2 ? build_two_level(1.0, 0.3, 0.1, 0.05) : ctx.model(d);
        const DensityMatrix rho0 = random_density(d, ctx.rng);
        const ComplexMatrix p = n == 0 ? ket_bra(0, 0, 2) : random_projection(d, ctx.rng);
        const Superoperator s = to_superoperator(model);
        for (double t : {0.3, 1.0, 2.5}) {
            const DensityMatrix rho = evolve_exact(s, rho0, t);
            const double plus = trace_product(evolve_exact(s, rho0, t + h).matrix(), p).real();
            const double minus = trace_product(evolve_exact(s, rho0, t - h).matrix(), p).real();
            worst = std::max(worst, std::abs((plus - minus) / (2 * h) - population_rate(model, rho, p)));
        }
    }
    return at_most("max |central FD of Tr(ρ(t)P) − Tr(ρ(t)L*(P))|", worst, 1e-6);
}

Measurement decomposition_completeness(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const Index d = uniform_index(2, 4, ctx.rng);
        const LindbladModel model = ctx.model(d);
        const DensityMatrix rho = random_density(d, ctx.rng);
        const ComplexMatrix p = random_projection(d, ctx.rng);
        double sum = 0.0;
        for (const auto& term : rate_decomposition(model, rho, p)) sum += term.value;
        worst = std::max(worst, std::abs(sum - population_rate(model, rho, p)));
    }
    return at_most("max |Σ terms − population_rate|", worst, 1e-12);
}

Measurement basis_covariance(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const Index d = uniform_index(2, 4, ctx.rng);
        const ComplexMatrix rho = random_density(d, ctx.rng).matrix();
        const ComplexMatrix m = random_hermitian(d, ctx.rng);
        const BasisChange u(random_unitary(d, ctx.rng));
        const Complex before = trace_product(rho, m);
        const Complex after = trace_product(transform_observable(rho, u), transform_observable(m, u));
        worst = std::max(worst, std::abs(before - after));
    }
    return at_most("max |Tr(ρM) − Tr((U†ρU)(U†MU))|", worst, 1e-12);
}

Measurement two_level_specialization(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 10; ++n) {
        const double mu = uniform(0.0, 2.0, ctx.rng);
        const LindbladModel model = build_two_level(1.0, mu, 0.1, 0.05);
        const CurrentObservable j = current_observable(model.channels()[0], ket_bra(0, 0, 2), 0);
        worst = std::max(worst, (j.observable - mu * ket_bra(1, 1, 2)).cwiseAbs().maxCoeff());
    }
    return at_most("max |μD*(A,|0⟩⟨0|) − μ|1⟩⟨1||", worst, 1e-15);
}

// evolve -------------------------------------------------------------------

double bloch_distance(const BlochState& a, const BlochState& b)
{
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

TwoLevelParams random_params(Context& ctx)
{
    return {uniform(0.0, 2.0, ctx.rng), uniform(0.0, 1.0, ctx.rng), uniform(0.0, 1.0, ctx.rng),
            uniform(0.0, 1.0, ctx.rng)};
}

Measurement oracle_equivalence(Context& ctx)
{
    double exact_err = 0.0;
    double rk4_err = 0.0;
    for (int n = 0; n < 20; ++n) {
        const TwoLevelParams params = random_params(ctx);
        const LindbladModel model = params.model();
        const DensityMatrix rho0 = random_density(2, ctx.rng);
        const BlochState b0 = bloch_from_rho(rho0);
        const Superoperator s = to_superoperator(model);
        for (double t : {0.5, 1.0, 5.0}) {
            exact_err = std::max(exact_err, bloch_distance(bloch_from_rho(evolve_exact(s, rho0, t)),
                                                           two_level_analytic(params, b0, t)));
        }
        const Trajectory traj = evolve_rk4(model, rho0, 5.0, 1e-3, 500);
        // samples every 0.5: t = 0.5, 1 and 5 are indices 1, 2 and 10
        for (std::size_t k : {1u, 2u, 10u}) {
            rk4_err = std::max(rk4_err, bloch_distance(bloch_from_rho(traj.states[k]),
                                                       two_level_analytic(params, b0, traj.times[k])));
        }
    }
    Measurement m = at_most("exact max Bloch error", exact_err, 1e-10);
    const Measurement r = at_most("rk4 max Bloch error", rk4_err, 1e-6);
    m.what += " = " + sci(exact_err) + " (" + m.bound + "); " + r.what;
    m.value = rk4_err;
    m.bound = r.bound;
    m.ok = m.ok && r.ok;
    return m;
}

Measurement trace_and_positivity(Context& ctx)
{
    double exact_trace = 0.0;
    double rk4_trace = 0.0;
    double min_eig = 1.0;
    for (int n = 0; n < 5; ++n) {
        const Index d = uniform_index(2, 4, ctx.rng);
        const LindbladModel model = n == 0 ? build_two_level(1.0, 0.3, 0.1, 0.05) : ctx.model(d);
        const DensityMatrix rho0 = random_density(model.dim(), ctx.rng);
        const Trajectory exact = evolve_exact_trajectory(model, rho0, 10.0, 0.5);
        const Trajectory rk4 = evolve_rk4(model, rho0, 10.0, 1e-3, 100);
        for (const auto& dg : exact.diagnostics) {
            exact_trace = std::max(exact_trace, dg.trace_error);
            min_eig = std::min(min_eig, dg.min_eigenvalue);
        }
        for (const auto& dg : rk4.diagnostics) {
            rk4_trace = std::max(rk4_trace, dg.trace_error);
            min_eig = std::min(min_eig, dg.min_eigenvalue);
        }
    }
    std::ostringstream what;
    what << "exact |Tr−1| = " << sci(exact_trace) << " (<= 1e-12), rk4 |Tr−1| = " << sci(rk4_trace)
         << " (<= 1e-9), min eigenvalue";
    return {what.str(), min_eig, ">= -1.000e-10",
            exact_trace <= 1e-12 && rk4_trace <= 1e-9 && min_eig >= -1e-10};
}

double rk4_benchmark_error(double dt)
{
    const TwoLevelParams params(1.0, 0.3, 0.1, 0.05);
    const BlochState b0{0.6, 0.0, -0.8};
    const long per_unit = std::lround(1.0 / dt);
    const Trajectory traj = evolve_rk4(params.model(), rho_from_bloch(b0), 10.0, dt,
                                       static_cast<int>(per_unit));
    double err = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        err = std::max(err, bloch_distance(bloch_from_rho(traj.states[k]),
                                           two_level_analytic(params, b0, traj.times[k])));
    }
    return err;
}

Measurement convergence_order(Context&)
{
    const double ratio = rk4_benchmark_error(0.1) / rk4_benchmark_error(0.05);
    return {"RK4 error ratio for dt 0.1 → 0.05", ratio, "in [12, 20]", ratio >= 12.0 && ratio <= 20.0};
}

Measurement spiral(Context& ctx)
{
    for (int n = 0; n < 10; ++n) {
        const TwoLevelParams params(uniform(0.0, 2.0, ctx.rng), uniform(0.0, 1.0, ctx.rng),
                                    uniform(0.0, 1.0, ctx.rng), uniform(0.01, 1.0, ctx.rng));
        const BlochState b0 = bloch_from_rho(random_density(2, ctx.rng));
        double prev = std::hypot(b0.x, b0.y);
        for (int k = 1; k <= 100; ++k) {
            const BlochState b = two_level_analytic(params, b0, 0.1 * k);
            const double r = std::hypot(b.x, b.y);
            if (!(r < prev)) return {"|ζ| strictly decreasing", 0.0, "all steps", false};
            prev = r;
        }
    }
    return {"|ζ| strictly decreasing on 10×100 samples", 1.0, "all steps", true};
}

// channels -----------------------------------------------------------------

Measurement heralding_consistency(Context&)
{
    const MatrixMap phi = heralding_as_map();
    const double dev =
        (phi.superoperator().matrix - transpose_map(2).superoperator().matrix).norm();
    const CpReport cp = is_completely_positive(phi);
    const double det = bloch_action(phi).determinant();
    const bool ok = dev <= 1e-10 && cp.min_eigenvalue <= -1.0 + 1e-12 && !cp.completely_positive &&
                    std::abs(det + 1.0) <= 1e-12;
    std::ostringstream what;
    what << "‖Φ_herald − T‖ = " << sci(dev) << ", Choi λ_min = " << sci(cp.min_eigenvalue)
         << ", Bloch det";
    return {what.str(), det, "= -1", ok};
}

Measurement herald_probability(Context& ctx)
{
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const StateVector psi(random_pure_state(2, ctx.rng));
        const HeraldOutcome out = herald(psi);
        worst = std::max(worst, std::abs(out.probability - 0.5));
        const double fidelity = std::norm(psi.amplitudes().conjugate().dot(out.bob_state.amplitudes()));
        worst = std::max(worst, 1.0 - fidelity);
    }
    return at_most("max(|p − ½|, 1 − |⟨ψ̄|bob⟩|²)", worst, 1e-12);
}

Measurement transpose_positivity(Context& ctx)
{
    const MatrixMap t2 = transpose_map(2);
    double worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const Index d = uniform_index(2, 4, ctx.rng);
        const MatrixMap t = d == 2 ? t2 : transpose_map(d);
        const ComplexMatrix rho = random_density(d, ctx.rng).matrix();
        const RealVector before = hermitian_eig(rho).eigenvalues;
        const RealVector after = hermitian_eig(apply_map(t, rho)).eigenvalues;
        worst = std::max(worst, (before - after).cwiseAbs().maxCoeff());
    }
    return at_most("max |eig(ρ) − eig(ρᵀ)|", worst, 1e-12);
}

Measurement semigroup_properties(Context& ctx)
{
    double composition = 0.0;
    double tp = 0.0;
    double min_eig = 1.0;
    for (int n = 0; n < 10; ++n) {
        const Index d = uniform_index(2, 4, ctx.rng);
        const LindbladModel model = n == 0 ? build_two_level(1.0, 0.3, 0.1, 0.05) : ctx.model(d);
        const double s = uniform(0.0, 3.0, ctx.rng);
        const double t = uniform(0.0, 3.0, ctx.rng);
        const MatrixMap joint = semigroup_channel(model, s + t);
        const MatrixMap split = compose(semigroup_channel(model, s), semigroup_channel(model, t));
        composition = std::max(composition,
                               (joint.superoperator().matrix - split.superoperator().matrix).norm());
        for (double tt : {0.1, 1.0, 10.0}) {
            const MatrixMap phi = semigroup_channel(model, tt);
            tp = std::max(tp, trace_preservation_defect(phi));
            min_eig = std::min(min_eig, is_completely_positive(phi).min_eigenvalue);
        }
    }
    std::ostringstream what;
    what << "composition defect = " << sci(composition) << " (<= 1e-10), TP defect = " << sci(tp)
         << " (<= 1e-10), Choi λ_min";
    return {what.str(), min_eig, ">= -1.000e-10",
            composition <= 1e-10 && tp <= 1e-10 && min_eig >= -1e-10};
}

const std::vector<std::pair<std::string, Suite>>& suites()
{
    static const std::vector<std::pair<std::string, Suite>> all = {
        {"matcore.eig_reconstruction", eig_reconstruction},
        {"matcore.commutator", commutator_identities},
        {"matcore.kron_associativity", kron_associativity},
        {"lindblad.duality", duality},
        {"lindblad.trace_unital_hermitian", generator_identities},
        {"lindblad.superoperator", superoperator_faithfulness},
        {"currents.sign_identity", sign_identity},
        {"currents.derivative_consistency", derivative_consistency},
        {"currents.decomposition", decomposition_completeness},
        {"currents.basis_covariance", basis_covariance},
        {"currents.two_level", two_level_specialization},
        {"evolve.oracle_equivalence", oracle_equivalence},
        {"evolve.trace_positivity", trace_and_positivity},
        {"evolve.convergence_order", convergence_order},
        {"evolve.spiral", spiral},
        {"channels.heralding", heralding_consistency},
        {"channels.herald_probability", herald_probability},
        {"channels.transpose_positive", transpose_positivity},
        {"channels.semigroup", semigroup_properties},
    };
    return all;
}

} // namespace

std::vector<SuiteResult> run_verify(const VerifyOptions& options)
{
    std::vector<SuiteResult> results;
    const auto& all = suites();
    for (std::size_t i = 0; i < all.size(); ++i) {
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                          static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(i)};
        Context ctx{Rng(seq), options};
        SuiteResult r{all[i].first, false, {}};
        try {
            const Measurement m = all[i].second(ctx);
            r.passed = m.ok;
            r.detail = m.what + " = " + sci(m.value) + " (" + m.bound + ")";
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("validation failure: ") + e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out)
{
    const auto results = run_verify(options);
    std::size_t passed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        if (r.passed) ++passed;
    }
    out << "verify: " << passed << "/" << results.size() << " suites passed (seed " << options.seed
        << ")\n";
    return passed == results.size() ? 0 : 1;
}

} // namespace oqs::cli
