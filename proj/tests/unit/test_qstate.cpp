#include <doctest.h>

#include <algorithm>
#include <vector>

#include "helpers.hpp"
#include "uebkit/error.hpp"
#include "uebkit/orthogonal_set.hpp"
#include "uebkit/sampling.hpp"

using namespace uebkit;
using namespace testing;

TEST_SUITE("qstate") {

TEST_CASE("make_state normalizes and fixes the phase") {
    const PureState s = make_state({cplx{1}, 0, 0, 0});
    CHECK(s.same_ray(basis_state(0)));
    const PureState b = make_state({cplx{2}, 0, 0, cplx{2}});
    CHECK(std::abs(b[0] - 1.0 / kRt2) < 1e-15);
    CHECK(std::abs(b[3] - 1.0 / kRt2) < 1e-15);
    CHECK(b.same_ray(bell::phi_plus()));

    const PureState phased = make_state({cplx{0, 3}, cplx{0, 4}, 0, 0});
    CHECK(phased[0].imag() == 0.0);
    CHECK(phased[0].real() == doctest::Approx(0.6));
    CHECK(phased[1].real() == doctest::Approx(0.8));
}

TEST_CASE("make_state rejects the zero vector") {
    try {
        make_state({cplx{}, cplx{}, cplx{}, cplx{}});
        FAIL("expected ZeroVector");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroVector);
    }
}

TEST_CASE("concurrence examples") {
    CHECK(concurrence(basis_state(0)) == 0.0);
    CHECK(concurrence(bell::phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
    const PureState s = state(0, std::sqrt(0.2), std::sqrt(0.8), 0);
    CHECK(concurrence(s) == doctest::Approx(0.8).epsilon(1e-12));
    const auto ev = reduced_spectrum(s);
    CHECK(concurrence(s) == doctest::Approx(2.0 * std::sqrt(ev[0] * ev[1])).epsilon(1e-12));
}

TEST_CASE("entanglement profile examples") {
    const EntanglementProfile p01 = entanglement_profile(basis_state(1));
    CHECK(p01.concurrence == 0.0);
    CHECK(p01.entropy == 0.0);

    const EntanglementProfile singlet = entanglement_profile(bell::psi_minus());
    CHECK(singlet.concurrence == doctest::Approx(1.0));
    CHECK(singlet.entropy == 1.0);

    const PureState s = state(0, std::sqrt(0.2), std::sqrt(0.8), 0);
    const EntanglementProfile p = entanglement_profile(s);
    CHECK(p.entropy == doctest::Approx(0.7219280948873623).epsilon(1e-12));
    CHECK(p.entropy == doctest::Approx(entropy_from_spectrum(reduced_spectrum(s))).epsilon(1e-12));
    CHECK(p.schmidt_coefficients[0] == doctest::Approx(0.8));
    CHECK(p.schmidt_coefficients[1] == doctest::Approx(0.2));
}

TEST_CASE("binary entropy edge cases") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
}

TEST_CASE("average entanglement") {
    const std::vector<PureState> bells{bell::phi_plus(), bell::phi_minus(), bell::psi_plus()};
    CHECK(average_entanglement(bells) == doctest::Approx(1.0));
    CHECK_THROWS_AS(average_entanglement(std::span<const PureState>{}), Error);
}

TEST_CASE("is_product examples") {
    const ProductCheck p11 = is_product(basis_state(3));
    REQUIRE(p11.product);
    CHECK(std::abs(p11.factors->left[1]) == doctest::Approx(1.0));
    CHECK(std::abs(p11.factors->right[1]) == doctest::Approx(1.0));

    CHECK_FALSE(is_product(bell::phi_plus()).product);

    const QubitState a = QubitState::make(1.0, cplx{0, -1});
    const QubitState b = QubitState::make(1.0, cplx{0, 1});
    const PureState ab = tensor(a, b);
    const ProductCheck pc = is_product(ab);
    REQUIRE(pc.product);
    CHECK(tensor(pc.factors->left, pc.factors->right).same_ray(ab));
    CHECK(ab.same_ray(state(0.5, cplx{0, 0.5}, cplx{0, -0.5}, 0.5)));
}

TEST_CASE("coefficient matrix round trip is exact") {
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        const PureState s = random_state(rng);
        CHECK(CoefficientMatrix::from(s).flatten() == s.amplitudes());
    }
}

TEST_CASE("orthogonal qubit partner") {
    const QubitState one = QubitState::make(0.0, 1.0);
    const QubitState z = one.orthogonal();
    CHECK(std::abs(z[0]) == doctest::Approx(1.0));
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const QubitState q = random_qubit(rng);
        const QubitState o = q.orthogonal();
        CHECK(std::abs(std::conj(q[0]) * o[0] + std::conj(q[1]) * o[1]) < 1e-15);
    }
}

TEST_CASE("properties over random states") {
    Rng rng(11);
    std::vector<PureState> states;
    for (int k = 0; k < 10000; ++k) {
        states.push_back(random_state(rng));
    }
    for (const PureState& s : states) {
        const double c = concurrence(s);
        REQUIRE(c >= 0.0);
        REQUIRE(c <= 1.0);
        const PureState r = apply_local(random_local_unitary(rng), random_local_unitary(rng), s);
        REQUIRE(std::abs(concurrence(r) - c) < 1e-8);
        const EntanglementProfile p = entanglement_profile(s);
        REQUIRE(is_product(s).product == (p.schmidt_coefficients[1] < 1e-9));
        REQUIRE(std::abs(p.concurrence - 2.0 * std::sqrt(p.schmidt_coefficients[0] * p.schmidt_coefficients[1])) < 1e-9);
    }
    for (std::size_t k = 0; k + 1 < states.size(); k += 2) {
        const EntanglementProfile a = entanglement_profile(states[k]);
        const EntanglementProfile b = entanglement_profile(states[k + 1]);
        if (a.concurrence < b.concurrence - 1e-9) {
            REQUIRE(a.entropy <= b.entropy + 1e-9);
        }
    }
}

TEST_CASE("products from random factors are detected") {
    Rng rng(13);
    for (int k = 0; k < 1000; ++k) {
        const PureState s = tensor(random_qubit(rng), random_qubit(rng));
        const ProductCheck pc = is_product(s);
        REQUIRE(pc.product);
        REQUIRE(tensor(pc.factors->left, pc.factors->right).same_ray(s, 1e-9));
    }
}

TEST_CASE("entropy snaps at the endpoints") {
    const double eps = 1e-11;
    const PureState nearly_product = state(1.0, 0, 0, eps);
    CHECK(entanglement_profile(nearly_product).entropy == 0.0);
    const PureState nearly_max = state(1.0, 0, 0, 1.0 - eps);
    CHECK(entanglement_profile(nearly_max).entropy == 1.0);
}

}

TEST_SUITE("orthogonal_set") {

TEST_CASE("validation names the pair and overlap") {
    try {
        OrthogonalSet({basis_state(0), make_state({1.0, 1.0, 0.0, 0.0})});
        FAIL("expected InvalidSet");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidSet);
        const std::string what = e.what();
        CHECK(what.find("states 0 and 1") != std::string::npos);
        CHECK(what.find("0.7071") != std::string::npos);
    }
}

TEST_CASE("cardinality limits") {
    CHECK_THROWS_AS(OrthogonalSet({basis_state(0)}), Error);
    CHECK_NOTHROW(OrthogonalSet({basis_state(0), basis_state(1), basis_state(2), basis_state(3)}));
}

TEST_CASE("entangled count and tolerance override") {
    const OrthogonalSet bells({bell::phi_plus(), bell::phi_minus(), basis_state(1)});
    CHECK(bells.entangled_count() == 2);
    const PureState tilted = make_state({1e-8, 0.0, 0.0, 1.0});
    CHECK_THROWS_AS(OrthogonalSet({basis_state(0), tilted}), Error);
    Tolerances loose;
    loose.orth = 1e-6;
    CHECK_NOTHROW(OrthogonalSet({basis_state(0), tilted}, loose));
}

}
