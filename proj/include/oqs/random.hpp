// random.hpp: seeded random instances for property checks

#pragma once

#include <random>

#include "oqs/density.hpp"
#include "oqs/lindblad.hpp"

namespace oqs {

using Rng = std::mt19937_64;

/// Entries i.i.d. complex normal.
ComplexMatrix random_ginibre(Index rows, Index cols, Rng& rng);
ComplexMatrix random_hermitian(Index d, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(Index d, Rng& rng);
/// Full-rank density matrix G G† / Tr(G G†).
DensityMatrix random_density(Index d, Rng& rng);
ComplexVector random_pure_state(Index d, Rng& rng);
/// Orthogonal projection of uniformly drawn rank 0..d onto random columns of
/// a Haar unitary.
ComplexMatrix random_projection(Index d, Rng& rng);
/// Random Hermitian H plus 1–3 Ginibre jump operators with rates in [0, 1).
LindbladModel random_model(Index d, Rng& rng);

double uniform(double lo, double hi, Rng& rng);
Index uniform_index(Index lo, Index hi, Rng& rng); // inclusive

} // namespace oqs
