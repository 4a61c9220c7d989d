#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "uebkit/orthogonal_set.hpp"
#include "uebkit/product_finder.hpp"
#include "uebkit/qstate.hpp"

namespace uebkit {

/// Schmidt weights of the two-parameter UEB family. lambda2 = 1 - lambda1 and
/// lambda4 = 1 - lambda3 are derived, never stored independently.
class GeneratorParams {
public:
    /// Throws Error(BadParam) unless both values lie strictly inside (0, 1).
    GeneratorParams(double lambda1, double lambda3 = 0.5);

    double lambda1() const noexcept { return l1_; }
    double lambda2() const noexcept { return 1.0 - l1_; }
    double lambda3() const noexcept { return l3_; }
    double lambda4() const noexcept { return 1.0 - l3_; }

private:
    double l1_;
    double l3_;
};

/// {psi1, psi2, psi3} with psi1 = sqrt(l1)|01> + sqrt(l2)|10>,
/// psi1_perp = sqrt(l2)|01> - sqrt(l1)|10>, psi2 = sqrt(l3)|00> + sqrt(l4) psi1_perp,
/// psi3 = sqrt(l4)|00> - sqrt(l3) psi1_perp. The orthocomplement is |11>.
/// A warning is attached when psi1 is maximally entangled (lambda1 = 1/2).
OrthogonalSet generate_eq1(const GeneratorParams& p, const Tolerances& tol = kDefaultTolerances);

/// {|00>, sqrt(l1)|01> + sqrt(l2)|10>, sqrt(l2)|01> - sqrt(l1)|10>}.
OrthogonalSet generate_eq2(double lambda1, const Tolerances& tol = kDefaultTolerances);

/// Three rows of a seeded random real orthogonal matrix read as magic-basis
/// coordinates: three orthogonal maximally entangled states.
OrthogonalSet random_max_entangled_triple(std::uint64_t seed);

/// The triple for identity coordinate rows (first three magic-basis vectors).
OrthogonalSet canonical_max_entangled_triple();

enum class UebFailure { NotAllEntangled, ComplementEntangled };

std::string_view to_string(UebFailure f);

struct UebVerdict {
    bool is_ueb = false;
    PureState complement_state;
    double complement_concurrence = 0.0;
    std::optional<UebFailure> reason;
};

/// Two-qubit UEBs have exactly three members; other sizes throw
/// Error(BadCardinality).
UebVerdict ueb_check(const OrthogonalSet& set);

struct SpanningVerdict {
    bool spanned_by_ueb = false;
    PureState complement_state;
    // Present when spanned_by_ueb: a member of the two-parameter family rotated
    // by local unitaries so its complement is `complement_state`.
    std::optional<OrthogonalSet> witness;
};

/// Whether some UEB spans the same 3-D subspace as `set`, i.e. whether the
/// complement of the span is a product state. Throws Error(BadCardinality)
/// for sizes other than three.
SpanningVerdict ueb_spanning_check(const OrthogonalSet& set, const GeneratorParams& witness_params = {0.3, 0.4});

// Seeded ensembles for property checks. Both samplers cycle through families
// by seed so every structural case (product complement, product members,
// generic) appears, each randomized by local unitaries.
enum class TripleFamily {
    Haar,
    RotatedEq1,
    RotatedEq2,
    ProductComplement,
    OneProductMember,
    TwoProductMembers,
    AllProduct,
    MaxEntangled,
};
enum class BasisFamily { Haar, Product, TwoEntangled, ThreeEntangled };

inline constexpr int kTripleFamilies = 8;
inline constexpr int kBasisFamilies = 4;

TripleFamily triple_family(std::uint64_t seed);
BasisFamily basis_family(std::uint64_t seed);

OrthogonalSet random_orthogonal_triple(std::uint64_t seed);
OrthogonalSet random_orthonormal_basis(std::uint64_t seed);

}  // namespace uebkit
