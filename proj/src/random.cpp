#include "oqs/random.hpp"

#include <cmath>

namespace oqs {

double uniform(double lo, double hi, Rng& rng)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Index uniform_index(Index lo, Index hi, Rng& rng)
{
    return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

ComplexMatrix random_ginibre(Index rows, Index cols, Rng& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    // Fill in a fixed order so results depend only on the seed.
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Complex{re, im};
        }
    }
    return m;
}

ComplexMatrix random_hermitian(Index d, Rng& rng)
{
    return hermitize(random_ginibre(d, d, rng));
}

ComplexMatrix random_unitary(Index d, Rng& rng)
{
    const ComplexMatrix g = random_ginibre(d, d, rng);
    const Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < d; ++k) {
        const double a = std::abs(r(k, k));
        if (a > 0.0) q.col(k) *= r(k, k) / a;
    }
    return q;
}

DensityMatrix random_density(Index d, Rng& rng)
{
    const ComplexMatrix g = random_ginibre(d, d, rng);
    const ComplexMatrix rho = g * g.adjoint();
    return DensityMatrix(rho / rho.trace().real());
}

ComplexVector random_pure_state(Index d, Rng& rng)
{
    const ComplexVector v = random_ginibre(d, 1, rng).col(0);
    return v / v.norm();
}

ComplexMatrix random_projection(Index d, Rng& rng)
{
    const Index rank = uniform_index(0, d, rng);
    const ComplexMatrix u = random_unitary(d, rng);
    const ComplexMatrix cols = u.leftCols(rank);
    return hermitize(cols * cols.adjoint());
}

LindbladModel random_model(Index d, Rng& rng)
{
    ComplexMatrix h = random_hermitian(d, rng);
    const Index n = uniform_index(1, 3, rng);
    std::vector<JumpChannel> channels;
    for (Index k = 0; k < n; ++k) {
        channels.push_back({random_ginibre(d, d, rng) / std::sqrt(static_cast<double>(d)),
                            uniform(0.0, 1.0, rng), "c" + std::to_string(k)});
    }
    return LindbladModel(std::move(h), std::move(channels));
}

} // namespace oqs
