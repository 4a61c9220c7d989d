#include "uebkit/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "uebkit/error.hpp"

namespace uebkit {

namespace {

// Multiplies by the phase that makes the first non-negligible entry real and
// nonnegative.
template <std::size_t N>
void canonicalize_phase(std::array<cplx, N>& amp, double eps_zero) {
    for (std::size_t k = 0; k < N; ++k) {
        const double r = std::abs(amp[k]);
        if (r > eps_zero) {
            const cplx phase = std::conj(amp[k]) / r;
            for (cplx& b : amp) {
                b *= phase;
            }
            amp[k] = cplx{r, 0.0};
            return;
        }
    }
}

}  // namespace

QubitState QubitState::make(cplx a0, cplx a1, double eps_zero) {
    const double n = std::sqrt(std::norm(a0) + std::norm(a1));
    if (n <= eps_zero) {
        throw Error(ErrorCode::ZeroVector, "single-qubit amplitudes have zero norm");
    }
    std::array<cplx, 2> amp{a0 / n, a1 / n};
    canonicalize_phase(amp, eps_zero);
    return QubitState(amp);
}

QubitState QubitState::orthogonal() const {
    return make(std::conj(amp_[1]), -std::conj(amp_[0]));
}

double ray_distance(const PureState& a, const PureState& b) {
    const cplx ov = inner(b, a);
    const double r = std::abs(ov);
    if (r == 0.0) {
        return std::sqrt(2.0);
    }
    const cplx phase = ov / r;
    double d2 = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        d2 += std::norm(a[k] - phase * b[k]);
    }
    return std::sqrt(d2);
}

bool PureState::same_ray(const PureState& other, double tol) const { return ray_distance(*this, other) < tol; }

PureState make_state(const Amplitudes& amplitudes, double eps_zero) {
    double n2 = 0.0;
    for (const cplx& a : amplitudes) {
        n2 += std::norm(a);
    }
    const double n = std::sqrt(n2);
    if (!(n > eps_zero)) {
        throw Error(ErrorCode::ZeroVector, "amplitude vector has norm " + std::to_string(n));
    }
    Amplitudes amp;
    for (std::size_t k = 0; k < 4; ++k) {
        amp[k] = amplitudes[k] / n;
    }
    canonicalize_phase(amp, eps_zero);
    return PureState(amp);
}

PureState basis_state(int index) {
    if (index < 0 || index > 3) {
        throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index));
    }
    Amplitudes amp{};
    amp[static_cast<std::size_t>(index)] = 1.0;
    return make_state(amp);
}

PureState tensor(const QubitState& left, const QubitState& right) {
    return make_state({left[0] * right[0], left[0] * right[1], left[1] * right[0], left[1] * right[1]});
}

namespace bell {
PureState phi_plus() { return make_state({1.0, 0.0, 0.0, 1.0}); }
PureState phi_minus() { return make_state({1.0, 0.0, 0.0, -1.0}); }
PureState psi_plus() { return make_state({0.0, 1.0, 1.0, 0.0}); }
PureState psi_minus() { return make_state({0.0, 1.0, -1.0, 0.0}); }
}  // namespace bell

cplx inner(const Amplitudes& a, const Amplitudes& b) {
    cplx sum{0.0, 0.0};
    for (std::size_t k = 0; k < 4; ++k) {
        sum += std::conj(a[k]) * b[k];
    }
    return sum;
}

cplx inner(const PureState& a, const PureState& b) { return inner(a.amplitudes(), b.amplitudes()); }

CoefficientMatrix CoefficientMatrix::from(const Amplitudes& amplitudes) {
    CoefficientMatrix c;
    c.m[0][0] = amplitudes[0];
    c.m[0][1] = amplitudes[1];
    c.m[1][0] = amplitudes[2];
    c.m[1][1] = amplitudes[3];
    return c;
}

Amplitudes CoefficientMatrix::flatten() const { return {m[0][0], m[0][1], m[1][0], m[1][1]}; }

PureState apply_local(const LocalUnitary& a, const LocalUnitary& b, const PureState& s) {
    // (A (x) B) vec(M) = vec(A M B^T)
    const auto in = CoefficientMatrix::from(s).m;
    std::array<std::array<cplx, 2>, 2> am{};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            am[r][c] = a.m[r][0] * in[0][c] + a.m[r][1] * in[1][c];
        }
    }
    CoefficientMatrix out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.m[r][c] = am[r][0] * b.m[c][0] + am[r][1] * b.m[c][1];
        }
    }
    return make_state(out.flatten());
}

double concurrence(const PureState& s) {
    return std::clamp(2.0 * std::abs(CoefficientMatrix::from(s).det()), 0.0, 1.0);
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

EntanglementProfile entanglement_profile(const PureState& s, const Tolerances& tol) {
    EntanglementProfile p;
    p.concurrence = concurrence(s);
    if (p.concurrence < tol.zero) {
        p.schmidt_coefficients = {1.0, 0.0};
        p.entropy = 0.0;
        return p;
    }
    if (std::abs(p.concurrence - 1.0) < tol.zero) {
        p.schmidt_coefficients = {0.5, 0.5};
        p.entropy = 1.0;
        return p;
    }
    const double root = std::sqrt(1.0 - p.concurrence * p.concurrence);
    // Smaller coefficient via C^2/4 = l+ l- avoids cancellation at small C.
    const double larger = 0.5 * (1.0 + root);
    const double smaller = p.concurrence * p.concurrence / (4.0 * larger);
    p.schmidt_coefficients = {larger, smaller};
    p.entropy = binary_entropy(smaller);
    return p;
}

double average_entanglement(std::span<const PureState> states, const Tolerances& tol) {
    if (states.empty()) {
        throw Error(ErrorCode::EmptySet, "average entanglement of an empty set");
    }
    double sum = 0.0;
    for (const PureState& s : states) {
        sum += entanglement_profile(s, tol).entropy;
    }
    return sum / static_cast<double>(states.size());
}

ProductCheck is_product(const PureState& s, const Tolerances& tol) {
    if (concurrence(s) >= tol.zero) {
        return {};
    }
    const auto m = CoefficientMatrix::from(s).m;
    // Rank one: M ~ x y^T. Read x off the column and y off the row through the
    // largest entry.
    int br = 0;
    int bc = 0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            if (std::abs(m[r][c]) > std::abs(m[br][bc])) {
                br = r;
                bc = c;
            }
        }
    }
    // Both factors are phase-canonical, so tensor(left, right) reproduces the
    // canonical s without a separate phase.
    return {true, ProductFactors{QubitState::make(m[0][bc], m[1][bc], tol.zero),
                                 QubitState::make(m[br][0], m[br][1], tol.zero)}};
}

std::string to_string(const PureState& s, int precision) {
    std::string out = "[";
    char buf[96];
    for (std::size_t k = 0; k < 4; ++k) {
        std::snprintf(buf, sizeof buf, "%s(%.*g, %.*g)", k ? ", " : "", precision, s[k].real(), precision,
                      s[k].imag());
        out += buf;
    }
    return out + "]";
}

}  // namespace uebkit
