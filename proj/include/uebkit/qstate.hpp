#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>

#include "uebkit/tolerances.hpp"

namespace uebkit {

using cplx = std::complex<double>;

// Computational-basis amplitudes ordered |00>, |01>, |10>, |11>.
using Amplitudes = std::array<cplx, 4>;

/// Normalized single-qubit state with canonical global phase.
class QubitState {
public:
    static QubitState make(cplx a0, cplx a1, double eps_zero = kDefaultTolerances.zero);

    const std::array<cplx, 2>& amplitudes() const noexcept { return amp_; }
    cplx operator[](std::size_t k) const { return amp_[k]; }

    /// The unique (up to phase) state orthogonal to this one, oriented so that
    /// orthogonal(|1>) = |0>.
    QubitState orthogonal() const;

private:
    explicit QubitState(std::array<cplx, 2> amp) : amp_(amp) {}
    std::array<cplx, 2> amp_;
};

/// A normalized two-qubit pure state.
///
/// The global phase is fixed: the first amplitude with modulus above the
/// zero threshold is real and nonnegative, so amplitudes of equal rays agree
/// unless the leading amplitude sits at the threshold itself.
class PureState {
public:
    const Amplitudes& amplitudes() const noexcept { return amp_; }
    cplx operator[](std::size_t k) const { return amp_[k]; }

    /// True when min over phases of ||this - e^{it} other|| is below `tol`.
    bool same_ray(const PureState& other, double tol = 1e-9) const;

    friend PureState make_state(const Amplitudes& amplitudes, double eps_zero);

private:
    explicit PureState(const Amplitudes& amp) : amp_(amp) {}
    Amplitudes amp_;
};

/// Normalizes and phase-canonicalizes. Throws Error(ZeroVector) when the
/// input norm is at most `eps_zero`.
PureState make_state(const Amplitudes& amplitudes, double eps_zero = kDefaultTolerances.zero);

PureState basis_state(int index);
PureState tensor(const QubitState& left, const QubitState& right);

namespace bell {
PureState phi_plus();    // (|00> + |11>)/sqrt2
PureState phi_minus();   // (|00> - |11>)/sqrt2
PureState psi_plus();    // (|01> + |10>)/sqrt2
PureState psi_minus();   // (|01> - |10>)/sqrt2
}  // namespace bell

/// min over t of ||a - e^{it} b||; 0 for identical rays, sqrt2 for orthogonal ones.
double ray_distance(const PureState& a, const PureState& b);

/// <a|b>
cplx inner(const PureState& a, const PureState& b);
cplx inner(const Amplitudes& a, const Amplitudes& b);

/// 2x2 reshaping of the amplitudes: m[r][c] is the amplitude of |r c>.
struct CoefficientMatrix {
    std::array<std::array<cplx, 2>, 2> m{};

    static CoefficientMatrix from(const Amplitudes& amplitudes);
    static CoefficientMatrix from(const PureState& s) { return from(s.amplitudes()); }

    Amplitudes flatten() const;
    cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

/// 2x2 unitary acting on one qubit.
struct LocalUnitary {
    std::array<std::array<cplx, 2>, 2> m{{{cplx{1.0}, cplx{0.0}}, {cplx{0.0}, cplx{1.0}}}};
};

/// (a (x) b)|s>
PureState apply_local(const LocalUnitary& a, const LocalUnitary& b, const PureState& s);

struct EntanglementProfile {
    double concurrence = 0.0;
    // (larger, smaller)
    std::array<double, 2> schmidt_coefficients{1.0, 0.0};
    double entropy = 0.0;  // ebits
};

/// 2|det M| clamped to [0, 1].
double concurrence(const PureState& s);

EntanglementProfile entanglement_profile(const PureState& s, const Tolerances& tol = kDefaultTolerances);

/// -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
double binary_entropy(double p);

/// Mean entanglement entropy of the states. Throws Error(EmptySet) on an empty span.
double average_entanglement(std::span<const PureState> states, const Tolerances& tol = kDefaultTolerances);

struct ProductFactors {
    QubitState left;
    QubitState right;
};

struct ProductCheck {
    bool product = false;
    std::optional<ProductFactors> factors;
};

ProductCheck is_product(const PureState& s, const Tolerances& tol = kDefaultTolerances);

std::string to_string(const PureState& s, int precision = 6);

}  // namespace uebkit
