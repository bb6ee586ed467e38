// random.hpp: seeded generators for random operators, states and channels

#pragma once

#include <cstddef>
#include <random>

#include "qthermo/matrix.hpp"
#include "qthermo/states.hpp"

namespace qthermo::random {

using Engine = std::mt19937_64;

// Gaussian (GUE-like) Hermitian matrix; entries ~ N(0, scale^2).
HermitianOperator hermitian(Engine& rng, std::size_t dim, double scale = 1.0);

// Ginibre-induced mixed state G G^dagger / Tr, full rank almost surely.
DensityMatrix density(Engine& rng, std::size_t dim);

PureState pure(Engine& rng, std::size_t dim);

// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed.
ComplexMatrix unitary(Engine& rng, std::size_t dim);

// Kraus set from the isometry obtained by QR of `count` stacked Gaussian blocks.
QuantumChannel channel(Engine& rng, std::size_t dim, std::size_t count);

} // namespace qthermo::random
