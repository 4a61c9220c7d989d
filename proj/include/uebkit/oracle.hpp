#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "uebkit/orthogonal_set.hpp"
#include "uebkit/product_finder.hpp"

namespace uebkit {

// Brute-force cross-checks for the analytic engine. Nothing here calls into
// product_finder's root solver or the discrimination module; product states
// are reached only through an explicit angle parameterization
//   (cos(t/2), e^{ip} sin(t/2)) (x) (cos(u/2), e^{iq} sin(u/2)).

struct GridSpec {
    int resolution = 64;          // grid points per angle, >= 8
    int refinement_rounds = 3;    // each round shrinks the cell by kRefineShrink
    double accept_threshold = 1e-6;

    /// Throws Error(BadParam) when an invariant is violated.
    void validate() const;
};

inline constexpr int kRefineShrink = 4;
inline constexpr double kPenaltyWeight = 1e3;
inline constexpr double kOverlapSeparation = 1e3;

struct OracleVerdict {
    bool identifiable = false;
    std::optional<PureState> witness;
    double best_score = 0.0;
    double zero_overlaps = 0.0;  // sqrt(sum_{j != i} |<a|psi_j>|^2) at the best candidate
    double target_overlap = 0.0;
};

/// Grid search for a Chefles witness for member `i` of a three-member set.
///
/// Maximizes |<a|psi_i>| - kPenaltyWeight * sum_{j != i} |<a|psi_j>| over the
/// 4-angle grid, refines every distinct coarse local maximum by compass search
/// followed by a least-squares polish of the other overlaps, and accepts a refined point with sum_{j != i} |<a|psi_j>|^2 < theta^2 and
/// |<a|psi_i>| > kOverlapSeparation * theta.
///
/// Throws Error(BadCardinality) unless the set has three members and
/// Error(IndexOutOfRange) for a bad index.
OracleVerdict oracle_identifiable(const OrthogonalSet& set, std::size_t i, const GridSpec& g = {});

struct ProductScan {
    // |det| stayed below the threshold on the whole coarse grid.
    bool all_product_suspect = false;
    std::vector<PureState> candidates;
};

/// Scans |det(cos t U + e^{ip} sin t V)| over t in [0, pi/2], p in [0, 2 pi),
/// refines local minima (compass search, then least squares on det) and clusters those below the threshold within ray
/// distance 1e-4. Throws Error(BadDimension) unless dim = 2.
ProductScan oracle_product_scan(const Subspace& sub, const GridSpec& g = {});

/// Oracle with a false-negative guard: construction runs the search on
/// certified-positive cases (members of maximally entangled triples) and
/// throws Error(ResolutionTooCoarse) if any of them is missed.
class Oracle {
public:
    explicit Oracle(const GridSpec& g = {});

    const GridSpec& grid() const noexcept { return grid_; }
    OracleVerdict identifiable(const OrthogonalSet& set, std::size_t i) const {
        return oracle_identifiable(set, i, grid_);
    }

private:
    GridSpec grid_;
};

}  // namespace uebkit
