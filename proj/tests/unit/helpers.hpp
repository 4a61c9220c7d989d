#pragma once

#include <cmath>
#include <complex>

#include "uebkit/qstate.hpp"

namespace testing {

using uebkit::cplx;

inline const double kRt2 = std::sqrt(2.0);

inline uebkit::PureState state(cplx a, cplx b, cplx c, cplx d) { return uebkit::make_state({a, b, c, d}); }

// Reduced density matrix of the left qubit, eigenvalues in closed form.
inline std::array<double, 2> reduced_spectrum(const uebkit::PureState& s) {
    const double r00 = std::norm(s[0]) + std::norm(s[1]);
    const double r11 = std::norm(s[2]) + std::norm(s[3]);
    const cplx r01 = s[0] * std::conj(s[2]) + s[1] * std::conj(s[3]);
    const double tr = r00 + r11;
    const double det = r00 * r11 - std::norm(r01);
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return {tr / 2.0 + disc, tr / 2.0 - disc};
}

inline double entropy_from_spectrum(const std::array<double, 2>& ev) {
    double h = 0.0;
    for (const double p : ev) {
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

}  // namespace testing
