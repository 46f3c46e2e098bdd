#pragma once

// Random test objects drawn from an explicit generator so every property run
// is reproducible from its seed.

#include <random>

#include "gramq/ensemble.hpp"

namespace gramq {

using Rng = std::mt19937_64;

/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
ComplexMatrix random_unitary(Index dim, Rng& rng);

/// Haar-random pure state.
PureState random_state(Index dim, Rng& rng);

/// Haar-random states with Dirichlet(1) probabilities.
Ensemble random_ensemble(std::size_t members, Index dim, Rng& rng);

/// Hilbert-Schmidt random density matrix of the given rank (full rank by default).
DensityMatrix random_density(Index dim, Rng& rng, Index rank = 0);

/// Dirichlet(1) sample on the simplex.
RealVector random_simplex_point(Index dim, Rng& rng);

}  // namespace gramq
