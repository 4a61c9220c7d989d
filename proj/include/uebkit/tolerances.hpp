#pragma once

namespace uebkit {

// Numerical thresholds shared by every decision in the library. Defaults are
// sized for double precision at Hilbert-space dimension 4.
struct Tolerances {
    double norm = 1e-12;     // unit-norm check
    double zero = 1e-9;      // rank / product-state decisions
    double orth = 1e-9;      // pairwise orthogonality and witness zero-overlaps
    double overlap = 1e-7;   // smallest overlap counted as "nonzero"
    double disc = 1e-8;      // relative discriminant below which a quadratic has a double root
};

inline constexpr Tolerances kDefaultTolerances{};

// Overlaps in [overlap, kWarningBandFactor * overlap] are flagged as near-threshold.
inline constexpr double kWarningBandFactor = 1e3;

}  // namespace uebkit
