#include "uebkit/product_finder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "uebkit/error.hpp"

namespace uebkit {

namespace {

// Removes the components along `basis` from v (two passes for stability).
void project_out(Amplitudes& v, std::span<const Amplitudes> basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const Amplitudes& b : basis) {
            const cplx c = inner(b, v);
            for (std::size_t k = 0; k < 4; ++k) {
                v[k] -= c * b[k];
            }
        }
    }
}

double norm(const Amplitudes& v) {
    double n2 = 0.0;
    for (const cplx& x : v) {
        n2 += std::norm(x);
    }
    return std::sqrt(n2);
}

ProjectiveRoot scaled(cplx a, cplx b, int multiplicity) {
    const cplx s = std::abs(a) >= std::abs(b) ? a : b;
    return {a / s, b / s, multiplicity};
}

}  // namespace

Subspace Subspace::from_orthonormal(std::vector<PureState> basis, const Tolerances& tol) {
    if (basis.empty() || basis.size() > 4) {
        throw Error(ErrorCode::BadDimension, "subspace basis of size " + std::to_string(basis.size()));
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const double ov = std::abs(inner(basis[i], basis[j]));
            if (!(ov < tol.orth)) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "basis vectors %zu and %zu overlap by %.6g", i, j, ov);
                throw Error(ErrorCode::NotOrthonormal, buf);
            }
        }
    }
    return Subspace(std::move(basis));
}

Subspace Subspace::span_of(std::span<const PureState> states, const Tolerances& tol) {
    std::vector<Amplitudes> done;
    std::vector<PureState> basis;
    for (const PureState& s : states) {
        Amplitudes v = s.amplitudes();
        project_out(v, done);
        if (norm(v) <= tol.zero) {
            throw Error(ErrorCode::BadDimension, "spanning states are linearly dependent");
        }
        basis.push_back(make_state(v, tol.zero));
        done.push_back(basis.back().amplitudes());
    }
    return from_orthonormal(std::move(basis), tol);
}

double Subspace::projection_weight(const PureState& s) const {
    double w = 0.0;
    for (const PureState& b : basis_) {
        w += std::norm(inner(b, s));
    }
    return w;
}

Projector projector(const Subspace& sub) {
    Projector p{};
    for (const PureState& b : sub.basis()) {
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                p[r][c] += b[r] * std::conj(b[c]);
            }
        }
    }
    return p;
}

double projector_distance(const Projector& p, const Projector& q) {
    double worst = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            worst = std::max(worst, std::abs(p[r][c] - q[r][c]));
        }
    }
    return worst;
}

Subspace orthocomplement(std::span<const PureState> orthonormal, const Tolerances& tol) {
    if (orthonormal.size() >= 4) {
        throw Error(ErrorCode::FullSpace, "input already spans the two-qubit space");
    }
    std::vector<Amplitudes> done;
    for (const PureState& s : orthonormal) {
        done.push_back(s.amplitudes());
    }
    std::vector<PureState> out;
    std::array<bool, 4> used{};
    while (done.size() < 4) {
        // Pivot on the computational basis vector with the largest residual.
        std::size_t best = 4;
        double best_norm = -1.0;
        Amplitudes best_v{};
        for (std::size_t e = 0; e < 4; ++e) {
            if (used[e]) {
                continue;
            }
            Amplitudes v{};
            v[e] = 1.0;
            project_out(v, done);
            const double n = norm(v);
            if (n > best_norm) {
                best = e;
                best_norm = n;
                best_v = v;
            }
        }
        used[best] = true;
        out.push_back(make_state(best_v, tol.zero));
        done.push_back(out.back().amplitudes());
    }
    return Subspace::from_orthonormal(std::move(out), tol);
}

Subspace orthocomplement(const Subspace& sub, const Tolerances& tol) { return orthocomplement(sub.basis(), tol); }

Subspace orthocomplement(const OrthogonalSet& set) {
    return orthocomplement(std::span<const PureState>(set.states()), set.tolerances());
}

QuadraticRoots quadratic_roots(cplx c2, cplx c1, cplx c0, const Tolerances& tol) {
    const double scale = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
    if (scale < tol.zero) {
        return {true, {}};
    }
    c2 /= scale;
    c1 /= scale;
    c0 /= scale;
    const cplx disc = c1 * c1 - 4.0 * c2 * c0;
    if (std::abs(disc) < tol.disc) {
        // Double root a/b = -c1/(2 c2) = -2 c0/c1; use the better-conditioned form.
        if (std::abs(c2) >= std::abs(c0)) {
            return {false, {scaled(-c1, 2.0 * c2, 2)}};
        }
        return {false, {scaled(2.0 * c0, -c1, 2)}};
    }
    cplx sd = std::sqrt(disc);
    if ((std::conj(c1) * sd).real() < 0.0) {
        sd = -sd;
    }
    const cplx q = -0.5 * (c1 + sd);
    return {false, {scaled(q, c2, 1), scaled(c0, q, 1)}};
}

std::array<cplx, 3> determinant_quadratic(const PureState& u, const PureState& v) {
    const CoefficientMatrix mu = CoefficientMatrix::from(u);
    const CoefficientMatrix mv = CoefficientMatrix::from(v);
    CoefficientMatrix sum;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            sum.m[r][c] = mu.m[r][c] + mv.m[r][c];
        }
    }
    const cplx du = mu.det();
    const cplx dv = mv.det();
    return {du, sum.det() - du - dv, dv};
}

ProductStateEnumeration product_states_in_2d(const Subspace& sub, const Tolerances& tol) {
    if (sub.dim() != 2) {
        throw Error(ErrorCode::BadDimension, "product enumeration needs a 2-D subspace, got dim " +
                                                 std::to_string(sub.dim()));
    }
    const PureState& u = sub.basis()[0];
    const PureState& v = sub.basis()[1];
    const auto [c2, c1, c0] = determinant_quadratic(u, v);

    ProductStateEnumeration result;
    const QuadraticRoots roots = quadratic_roots(c2, c1, c0, tol);
    if (!roots.identically_zero) {
        for (const ProjectiveRoot& r : roots.roots) {
            Amplitudes w;
            for (std::size_t k = 0; k < 4; ++k) {
                w[k] = r.a * u[k] + r.b * v[k];
            }
            const PureState s = make_state(w, tol.zero);
            const bool dup = std::any_of(result.states.begin(), result.states.end(),
                                         [&](const PureState& t) { return t.same_ray(s, tol.zero); });
            if (dup) {
                result.multiplicities.back() += r.multiplicity;
                continue;
            }
            result.states.push_back(s);
            result.multiplicities.push_back(r.multiplicity);
        }
        return result;
    }

    // Every element is a product state, so u and v share one tensor factor.
    result.kind = ProductKind::AllProduct;
    const ProductCheck pu = is_product(u, tol);
    const ProductCheck pv = is_product(v, tol);
    if (!pu.factors || !pv.factors) {
        throw Error(ErrorCode::InternalContradiction, "vanishing determinant quadratic on an entangled basis vector");
    }
    const auto overlap = [](const QubitState& x, const QubitState& y) {
        return std::abs(std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]);
    };
    const double left_ov = overlap(pu.factors->left, pv.factors->left);
    const double right_ov = overlap(pu.factors->right, pv.factors->right);
    const bool left_fixed = left_ov >= right_ov;
    const QubitState fixed = left_fixed ? pu.factors->left : pu.factors->right;
    result.fixed_side = left_fixed ? FactorSide::Left : FactorSide::Right;
    result.fixed_factor = fixed;
    const double h = 1.0 / std::sqrt(2.0);
    for (const QubitState& other :
         {QubitState::make(1.0, 0.0), QubitState::make(0.0, 1.0), QubitState::make(h, h)}) {
        result.states.push_back(left_fixed ? tensor(fixed, other) : tensor(other, fixed));
        result.multiplicities.push_back(0);
    }
    return result;
}

}  // namespace uebkit
