#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "uebkit/qstate.hpp"

namespace uebkit {

using Rng = std::mt19937_64;

// Columns of a 4x4 unitary, each stored as computational-basis amplitudes.
using Unitary4 = std::array<Amplitudes, 4>;

/// Isotropic complex Gaussian amplitudes, normalized.
PureState random_state(Rng& rng);
QubitState random_qubit(Rng& rng);
LocalUnitary random_local_unitary(Rng& rng);

/// Haar-distributed unitary: Gram-Schmidt on a complex Ginibre matrix.
Unitary4 random_unitary(Rng& rng);

/// Real orthogonal 4x4 matrix (rows) from a Gaussian matrix, redrawn while the
/// Gram-Schmidt condition estimate exceeds `max_condition`.
std::array<std::array<double, 4>, 4> random_orthogonal(Rng& rng, double max_condition = 1e6);

}  // namespace uebkit
