#pragma once

// Seeded random instances for the verification suites.

#include <cstddef>
#include <random>

#include "cohcat/states.hpp"

namespace cohcat::random {

using Engine = std::mt19937_64;

/// Uniform (Dirichlet(1,...,1)) point on the simplex.
ProbabilityVector probability(std::size_t dim, Engine& rng);

/// Pure state whose dephased diagonal is uniform on the simplex over the
/// first `support` entries, zero-padded to `dim`.
AmplitudeVector pure(std::size_t support, std::size_t dim, Engine& rng);

/// Ginibre-ensemble density matrix G G^dagger / Tr, G of size dim x rank.
/// rank == 0 means full rank.
DensityMatrix density(std::size_t dim, Engine& rng, std::size_t rank = 0);

}  // namespace cohcat::random
