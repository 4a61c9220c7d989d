#pragma once

#include <array>
#include <cmath>

#include "uebkit/qstate.hpp"

namespace uebkit::magic {

// Maximally entangled basis whose real linear combinations are again
// maximally entangled: for real r, det of the coefficient matrix of
// sum_k r_k m_k equals |r|^2 / 2. The phases are load-bearing; do not
// canonicalize these vectors.
inline const std::array<Amplitudes, 4>& basis() {
    static const double h = 1.0 / std::sqrt(2.0);
    static const std::array<Amplitudes, 4> m{{
        {cplx{h, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{h, 0.0}},
        {cplx{0.0, h}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, -h}},
        {cplx{0.0, 0.0}, cplx{0.0, h}, cplx{0.0, h}, cplx{0.0, 0.0}},
        {cplx{0.0, 0.0}, cplx{h, 0.0}, cplx{-h, 0.0}, cplx{0.0, 0.0}},
    }};
    return m;
}

/// State with real magic-basis coordinates `r` (normalized on output).
inline PureState from_coordinates(const std::array<double, 4>& r) {
    Amplitudes a{};
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t c = 0; c < 4; ++c) {
            a[c] += r[k] * basis()[k][c];
        }
    }
    return make_state(a);
}

}  // namespace uebkit::magic
