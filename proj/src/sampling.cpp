#include "uebkit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace uebkit {

namespace {

cplx gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

// Modified Gram-Schmidt in place; returns the R diagonal.
template <typename T, std::size_t N>
std::array<double, N> orthonormalize(std::array<std::array<T, N>, N>& v) {
    std::array<double, N> diag{};
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            T proj{};
            for (std::size_t c = 0; c < N; ++c) {
                if constexpr (std::is_same_v<T, cplx>) {
                    proj += std::conj(v[j][c]) * v[k][c];
                } else {
                    proj += v[j][c] * v[k][c];
                }
            }
            for (std::size_t c = 0; c < N; ++c) {
                v[k][c] -= proj * v[j][c];
            }
        }
        double n2 = 0.0;
        for (const T& x : v[k]) {
            n2 += std::norm(x);
        }
        diag[k] = std::sqrt(n2);
        for (T& x : v[k]) {
            x /= diag[k];
        }
    }
    return diag;
}

}  // namespace

PureState random_state(Rng& rng) {
    Amplitudes a;
    for (cplx& x : a) {
        x = gaussian(rng);
    }
    return make_state(a);
}

QubitState random_qubit(Rng& rng) {
    const cplx a0 = gaussian(rng);
    const cplx a1 = gaussian(rng);
    return QubitState::make(a0, a1);
}

LocalUnitary random_local_unitary(Rng& rng) {
    std::array<std::array<cplx, 2>, 2> cols{};
    for (auto& col : cols) {
        for (cplx& x : col) {
            x = gaussian(rng);
        }
    }
    orthonormalize(cols);
    LocalUnitary u;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            u.m[r][c] = cols[c][r];
        }
    }
    return u;
}

Unitary4 random_unitary(Rng& rng) {
    Unitary4 cols{};
    for (auto& col : cols) {
        for (cplx& x : col) {
            x = gaussian(rng);
        }
    }
    orthonormalize(cols);
    return cols;
}

std::array<std::array<double, 4>, 4> random_orthogonal(Rng& rng, double max_condition) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        std::array<std::array<double, 4>, 4> rows{};
        for (auto& row : rows) {
            for (double& x : row) {
                x = n(rng);
            }
        }
        const auto diag = orthonormalize(rows);
        const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
        if (*lo > 0.0 && *hi / *lo <= max_condition) {
            return rows;
        }
    }
}

}  // namespace uebkit
