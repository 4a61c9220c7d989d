#include "uebkit/orthogonal_set.hpp"

#include <cmath>
#include <cstdio>

#include "uebkit/error.hpp"

namespace uebkit {

OrthogonalSet::OrthogonalSet(std::vector<PureState> states, const Tolerances& tol, std::vector<std::string> warnings)
    : states_(std::move(states)), tol_(tol), warnings_(std::move(warnings)) {
    if (states_.size() < 2 || states_.size() > 4) {
        throw Error(ErrorCode::InvalidSet,
                    "cardinality " + std::to_string(states_.size()) + " outside {2, 3, 4}");
    }
    for (std::size_t i = 0; i < states_.size(); ++i) {
        for (std::size_t j = i + 1; j < states_.size(); ++j) {
            const double ov = std::abs(inner(states_[i], states_[j]));
            if (!(ov < tol_.orth)) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "states %zu and %zu are not orthogonal: |<psi_%zu|psi_%zu>| = %.6g", i,
                              j, i, j, ov);
                throw Error(ErrorCode::InvalidSet, buf);
            }
        }
    }
}

std::size_t OrthogonalSet::entangled_count() const {
    std::size_t n = 0;
    for (const PureState& s : states_) {
        if (concurrence(s) >= tol_.zero) {
            ++n;
        }
    }
    return n;
}

OrthogonalSet OrthogonalSet::with_tolerances(const Tolerances& tol) const {
    return OrthogonalSet(states_, tol, warnings_);
}

double average_entanglement(const OrthogonalSet& set) {
    return average_entanglement(std::span<const PureState>(set.states()), set.tolerances());
}

}  // namespace uebkit
