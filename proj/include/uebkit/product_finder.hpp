#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "uebkit/orthogonal_set.hpp"
#include "uebkit/qstate.hpp"
#include "uebkit/tolerances.hpp"

namespace uebkit {

/// Orthonormal basis of a subspace of C^2 (x) C^2.
class Subspace {
public:
    /// Validates the Gram matrix against the identity within `tol.orth`;
    /// throws Error(NotOrthonormal) otherwise.
    static Subspace from_orthonormal(std::vector<PureState> basis, const Tolerances& tol = kDefaultTolerances);

    /// Gram-Schmidt span of arbitrary (linearly independent) states. Throws
    /// Error(BadDimension) if the states are dependent within `tol.zero`.
    static Subspace span_of(std::span<const PureState> states, const Tolerances& tol = kDefaultTolerances);

    const std::vector<PureState>& basis() const noexcept { return basis_; }
    std::size_t dim() const noexcept { return basis_.size(); }

    /// Squared norm of the projection of `s` onto the subspace.
    double projection_weight(const PureState& s) const;

private:
    explicit Subspace(std::vector<PureState> basis) : basis_(std::move(basis)) {}
    std::vector<PureState> basis_;
};

using Projector = std::array<std::array<cplx, 4>, 4>;

Projector projector(const Subspace& sub);

/// Largest entrywise modulus of P - Q.
double projector_distance(const Projector& p, const Projector& q);

/// Orthonormal basis of the orthogonal complement. Throws Error(FullSpace)
/// when the input already spans all four dimensions.
Subspace orthocomplement(const Subspace& sub, const Tolerances& tol = kDefaultTolerances);
Subspace orthocomplement(const OrthogonalSet& set);
Subspace orthocomplement(std::span<const PureState> orthonormal, const Tolerances& tol = kDefaultTolerances);

/// Point (a : b) on the complex projective line, scaled so the larger of
/// |a|, |b| is exactly 1.
struct ProjectiveRoot {
    cplx a;
    cplx b;
    int multiplicity = 1;
};

struct QuadraticRoots {
    bool identically_zero = false;
    std::vector<ProjectiveRoot> roots;
};

/// Roots of c2 a^2 + c1 a b + c0 b^2 on the projective line.
///
/// Coefficients are scaled by their largest modulus first; all-zero input
/// (below `tol.zero`) is reported as identically zero. The two roots are
/// formed as (q : c2) and (c0 : q) with q = -(c1 + sqrt(D))/2 and the sign of
/// sqrt(D) aligned with c1, so a vanishing c2 or c0 needs no special case.
/// |D| below `tol.disc` (relative) yields one root of multiplicity 2.
QuadraticRoots quadratic_roots(cplx c2, cplx c1, cplx c0, const Tolerances& tol = kDefaultTolerances);

enum class ProductKind { Finite, AllProduct };
enum class FactorSide { Left, Right };

struct ProductStateEnumeration {
    ProductKind kind = ProductKind::Finite;
    // Finite: the product states with root multiplicities. AllProduct: three
    // representatives of the family (multiplicity 0).
    std::vector<PureState> states;
    std::vector<int> multiplicities;
    // AllProduct only: which tensor factor is common to the whole subspace.
    std::optional<FactorSide> fixed_side;
    std::optional<QubitState> fixed_factor;
};

/// Exact enumeration of product states in a two-dimensional subspace.
///
/// A general element a u + b v is a product state iff det(aU + bV) = 0, a
/// homogeneous quadratic in (a, b) with coefficients det U,
/// det(U + V) - det U - det V and det V. Over C it always has a root, so the
/// Finite list is never empty. Throws Error(BadDimension) unless dim = 2.
ProductStateEnumeration product_states_in_2d(const Subspace& sub, const Tolerances& tol = kDefaultTolerances);

/// Coefficients (c2, c1, c0) of det(aU + bV) for the basis of a 2-D subspace.
std::array<cplx, 3> determinant_quadratic(const PureState& u, const PureState& v);

}  // namespace uebkit
