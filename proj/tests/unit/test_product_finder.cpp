#include <doctest.h>

#include <algorithm>
#include <vector>

#include "helpers.hpp"
#include "uebkit/error.hpp"
#include "uebkit/magic_basis.hpp"
#include "uebkit/product_finder.hpp"
#include "uebkit/sampling.hpp"
#include "uebkit/ueb.hpp"

using namespace uebkit;
using namespace testing;

namespace {

Subspace span2(const PureState& a, const PureState& b) {
    const std::array<PureState, 2> v{a, b};
    return Subspace::span_of(v);
}

bool contains_ray(const std::vector<PureState>& list, const PureState& s, double tol = 1e-9) {
    return std::any_of(list.begin(), list.end(), [&](const PureState& x) { return x.same_ray(s, tol); });
}

}  // namespace

TEST_SUITE("product_finder") {

TEST_CASE("orthocomplement examples") {
    const OrthogonalSet three({basis_state(0), basis_state(1), basis_state(2)});
    const Subspace c = orthocomplement(three);
    REQUIRE(c.dim() == 1);
    CHECK(c.basis()[0].same_ray(basis_state(3)));

    const Subspace ueb = orthocomplement(generate_eq1({0.3, 0.4}));
    REQUIRE(ueb.dim() == 1);
    CHECK(ueb.basis()[0].same_ray(basis_state(3)));

    const Subspace bells = orthocomplement(OrthogonalSet({bell::phi_plus(), bell::phi_minus(), bell::psi_plus()}));
    REQUIRE(bells.dim() == 1);
    CHECK(bells.basis()[0].same_ray(bell::psi_minus()));
    CHECK(concurrence(bells.basis()[0]) == doctest::Approx(1.0));
}

TEST_CASE("orthocomplement of a full basis throws") {
    const OrthogonalSet all({basis_state(0), basis_state(1), basis_state(2), basis_state(3)});
    try {
        orthocomplement(all);
        FAIL("expected FullSpace");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FullSpace);
    }
}

TEST_CASE("orthocomplement dimensions add to four") {
    Rng rng(17);
    for (int k = 0; k < 200; ++k) {
        const Unitary4 u = random_unitary(rng);
        const std::size_t d = 1 + static_cast<std::size_t>(k % 3);
        std::vector<PureState> in;
        for (std::size_t j = 0; j < d; ++j) {
            in.push_back(make_state(u[j]));
        }
        const Subspace c = orthocomplement(std::span<const PureState>(in));
        REQUIRE(c.dim() + d == 4);
        for (const PureState& x : c.basis()) {
            for (const PureState& y : in) {
                REQUIRE(std::abs(inner(x, y)) < 1e-9);
            }
        }
    }
}

TEST_CASE("quadratic roots examples") {
    const QuadraticRoots sum_sq = quadratic_roots(1.0, 0.0, 1.0);
    REQUIRE(sum_sq.roots.size() == 2);
    for (const ProjectiveRoot& r : sum_sq.roots) {
        CHECK(std::abs(r.a * r.a + r.b * r.b) < 1e-15);
        CHECK(std::max(std::abs(r.a), std::abs(r.b)) == 1.0);
    }

    const QuadraticRoots ab = quadratic_roots(0.0, 1.0, 0.0);
    REQUIRE(ab.roots.size() == 2);
    const bool a_zero = std::abs(ab.roots[0].a) == 0.0 || std::abs(ab.roots[1].a) == 0.0;
    const bool b_zero = std::abs(ab.roots[0].b) == 0.0 || std::abs(ab.roots[1].b) == 0.0;
    CHECK(a_zero);
    CHECK(b_zero);

    const QuadraticRoots dbl = quadratic_roots(1.0, -2.0, 1.0);
    REQUIRE(dbl.roots.size() == 1);
    CHECK(dbl.roots[0].multiplicity == 2);
    CHECK(std::abs(dbl.roots[0].a - dbl.roots[0].b) < 1e-15);

    CHECK(quadratic_roots(0.0, 0.0, 1e-12).identically_zero);
}

TEST_CASE("quadratic roots stay accurate for widely separated roots") {
    // (a - 1e-9 b)(a - 1e9 b) = a^2 - (1e9 + 1e-9) ab + b^2
    const QuadraticRoots r = quadratic_roots(1.0, -(1e9 + 1e-9), 1.0);
    REQUIRE(r.roots.size() == 2);
    std::vector<double> ratios;
    for (const ProjectiveRoot& x : r.roots) {
        ratios.push_back(std::abs(x.a) >= std::abs(x.b) ? std::abs(x.b / x.a) : -std::abs(x.a / x.b));
    }
    std::sort(ratios.begin(), ratios.end());
    // One root at a/b = 1e-9 (stored as b-dominant), one at a/b = 1e9 (a-dominant).
    CHECK(ratios[0] == doctest::Approx(-1e-9).epsilon(1e-9));
    CHECK(ratios[1] == doctest::Approx(1e-9).epsilon(1e-9));
}

TEST_CASE("product states in span{phi+, psi-}") {
    const ProductStateEnumeration e = product_states_in_2d(span2(bell::phi_plus(), bell::psi_minus()));
    REQUIRE(e.kind == ProductKind::Finite);
    REQUIRE(e.states.size() == 2);
    const PureState w1 = tensor(QubitState::make(1.0, cplx{0, -1}), QubitState::make(1.0, cplx{0, 1}));
    const PureState w2 = tensor(QubitState::make(1.0, cplx{0, 1}), QubitState::make(1.0, cplx{0, -1}));
    CHECK(contains_ray(e.states, w1));
    CHECK(contains_ray(e.states, w2));
}

TEST_CASE("tangent subspace has the single product state |11>") {
    const ProductStateEnumeration e = product_states_in_2d(span2(generate_eq1({0.3, 0.4})[0], basis_state(3)));
    REQUIRE(e.kind == ProductKind::Finite);
    REQUIRE(e.states.size() == 1);
    CHECK(e.states[0].same_ray(basis_state(3)));
    CHECK(e.multiplicities[0] == 2);
}

TEST_CASE("all-product subspace") {
    const ProductStateEnumeration e = product_states_in_2d(span2(basis_state(0), basis_state(1)));
    REQUIRE(e.kind == ProductKind::AllProduct);
    REQUIRE(e.fixed_side);
    CHECK(*e.fixed_side == FactorSide::Left);
    CHECK(std::abs((*e.fixed_factor)[0]) == doctest::Approx(1.0));
    CHECK(e.states.size() == 3);
    for (const PureState& s : e.states) {
        CHECK(concurrence(s) < 1e-12);
    }
}

TEST_CASE("diagonal subspace") {
    const ProductStateEnumeration e = product_states_in_2d(span2(basis_state(0), basis_state(3)));
    REQUIRE(e.states.size() == 2);
    CHECK(contains_ray(e.states, basis_state(0)));
    CHECK(contains_ray(e.states, basis_state(3)));
}

TEST_CASE("bad dimension") {
    const std::array<PureState, 1> one{basis_state(0)};
    CHECK_THROWS_AS(product_states_in_2d(Subspace::span_of(one)), Error);
}

TEST_CASE("determinant quadratic identity") {
    Rng rng(19);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const PureState u = random_state(rng);
        const PureState v = random_state(rng);
        const cplx a{d(rng), d(rng)};
        const cplx b{d(rng), d(rng)};
        const auto c = determinant_quadratic(u, v);
        Amplitudes mix{};
        for (std::size_t j = 0; j < 4; ++j) {
            mix[j] = a * u[j] + b * v[j];
        }
        const cplx direct = CoefficientMatrix::from(mix).det();
        REQUIRE(std::abs(direct - (c[0] * a * a + c[1] * a * b + c[2] * b * b)) < 1e-8);
    }
}

TEST_CASE("random planes: soundness and no duplicates") {
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        Rng rng(seed);
        const Subspace sub = span2(random_state(rng), random_state(rng));
        const ProductStateEnumeration e = product_states_in_2d(sub);
        REQUIRE_FALSE(e.states.empty());
        for (const PureState& s : e.states) {
            REQUIRE(concurrence(s) < 1e-9);
            REQUIRE(sub.projection_weight(s) > 1.0 - 1e-9);
        }
        if (e.states.size() == 2) {
            REQUIRE_FALSE(e.states[0].same_ray(e.states[1], 1e-6));
        }
    }
}

TEST_CASE("magic basis: real combinations are maximally entangled") {
    Rng rng(23);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const PureState s = magic::from_coordinates({n(rng), n(rng), n(rng), n(rng)});
        REQUIRE(std::abs(concurrence(s) - 1.0) < 1e-12);
    }
}

TEST_CASE("projector distance between equal spans") {
    const std::array<PureState, 2> a{basis_state(0), basis_state(1)};
    const std::array<PureState, 2> b{make_state({1.0, 1.0, 0.0, 0.0}), make_state({1.0, -1.0, 0.0, 0.0})};
    CHECK(projector_distance(projector(Subspace::span_of(a)), projector(Subspace::span_of(b))) < 1e-15);
}

}
