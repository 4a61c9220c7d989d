#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uebkit/qstate.hpp"
#include "uebkit/tolerances.hpp"

namespace uebkit {

/// Pairwise-orthogonal collection of 2 to 4 two-qubit pure states.
///
/// Construction validates cardinality and orthogonality; a violation throws
/// Error(InvalidSet) naming the offending pair and its overlap modulus.
/// `warnings` carries notes from generators (for example a member that is
/// maximally entangled where a family is nominally nonmaximal).
class OrthogonalSet {
public:
    explicit OrthogonalSet(std::vector<PureState> states, const Tolerances& tol = kDefaultTolerances,
                           std::vector<std::string> warnings = {});

    const std::vector<PureState>& states() const noexcept { return states_; }
    const PureState& operator[](std::size_t i) const { return states_.at(i); }
    std::size_t size() const noexcept { return states_.size(); }
    const Tolerances& tolerances() const noexcept { return tol_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Members with concurrence at or above the zero threshold.
    std::size_t entangled_count() const;

    /// Copy with different tolerances (revalidated).
    OrthogonalSet with_tolerances(const Tolerances& tol) const;

private:
    std::vector<PureState> states_;
    Tolerances tol_;
    std::vector<std::string> warnings_;
};

double average_entanglement(const OrthogonalSet& set);

}  // namespace uebkit
