#pragma once

// Random states and unitaries for property checks.
//
// Measures: mixed states are uniform in the Bloch ball of radius 1/2
// (rejection sampling), pure states uniform on its surface, unitaries Haar
// distributed (QR of a complex Ginibre matrix with the phase fix).

#include <cstdint>
#include <random>

#include "qhog/core.hpp"
#include "qhog/qubit.hpp"

namespace qhog {

using Rng = std::mt19937_64;

QubitState random_mixed_state(Rng& rng);
QubitState random_pure_state(Rng& rng);
/// Mixed with probability 1/2, pure otherwise.
QubitState random_state(Rng& rng);

std::array<cplx, 2> random_ket(Rng& rng);

/// Haar-random dim x dim unitary.
CMatrix random_unitary(std::size_t dim, Rng& rng);

/// Random Hermitian matrix with standard normal entries.
CMatrix random_hermitian(std::size_t dim, Rng& rng);

/// Random density matrix of a `dim`-level system (Ginibre G G^dagger / tr).
CMatrix random_density(std::size_t dim, Rng& rng);

/// Uniform on [0, pi/2].
double random_eta(Rng& rng);

}  // namespace qhog
