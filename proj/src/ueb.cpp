#include "uebkit/ueb.hpp"

#include <cmath>
#include <cstdio>

#include "uebkit/error.hpp"
#include "uebkit/magic_basis.hpp"
#include "uebkit/sampling.hpp"

namespace uebkit {

namespace {

PureState ket(cplx a00, cplx a01, cplx a10, cplx a11) { return make_state({a00, a01, a10, a11}); }

// `count` random orthonormal states orthogonal to `fixed`.
std::vector<PureState> random_in_complement(Rng& rng, const std::vector<PureState>& fixed, std::size_t count) {
    std::vector<PureState> done = fixed;
    std::vector<PureState> out;
    while (out.size() < count) {
        Amplitudes v = random_state(rng).amplitudes();
        for (int pass = 0; pass < 2; ++pass) {
            for (const PureState& b : done) {
                const cplx c = inner(b.amplitudes(), v);
                for (std::size_t k = 0; k < 4; ++k) {
                    v[k] -= c * b[k];
                }
            }
        }
        double n2 = 0.0;
        for (const cplx& x : v) {
            n2 += std::norm(x);
        }
        if (n2 < 1e-6) {
            continue;
        }
        out.push_back(make_state(v));
        done.push_back(out.back());
    }
    return out;
}

OrthogonalSet rotated(const OrthogonalSet& set, Rng& rng) {
    const LocalUnitary a = random_local_unitary(rng);
    const LocalUnitary b = random_local_unitary(rng);
    std::vector<PureState> out;
    for (const PureState& s : set.states()) {
        out.push_back(apply_local(a, b, s));
    }
    return OrthogonalSet(std::move(out));
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

GeneratorParams::GeneratorParams(double lambda1, double lambda3) : l1_(lambda1), l3_(lambda3) {
    for (const double l : {lambda1, lambda3}) {
        if (!(l > 0.0 && l < 1.0)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "lambda = %.17g outside (0, 1)", l);
            throw Error(ErrorCode::BadParam, buf);
        }
    }
}

OrthogonalSet generate_eq1(const GeneratorParams& p, const Tolerances& tol) {
    const double s1 = std::sqrt(p.lambda1());
    const double s2 = std::sqrt(p.lambda2());
    const double s3 = std::sqrt(p.lambda3());
    const double s4 = std::sqrt(p.lambda4());
    // psi1_perp = s2|01> - s1|10>
    const PureState psi1 = ket(0.0, s1, s2, 0.0);
    const PureState psi2 = ket(s3, s4 * s2, -s4 * s1, 0.0);
    const PureState psi3 = ket(s4, -s3 * s2, s3 * s1, 0.0);
    std::vector<std::string> warnings;
    if (std::abs(concurrence(psi1) - 1.0) < tol.zero) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "psi1 is maximally entangled at lambda1 = %.12g; the family is nominally nonmaximally entangled",
                      p.lambda1());
        warnings.emplace_back(buf);
    }
    return OrthogonalSet({psi1, psi2, psi3}, tol, std::move(warnings));
}

OrthogonalSet generate_eq2(double lambda1, const Tolerances& tol) {
    const GeneratorParams p(lambda1);
    const double s1 = std::sqrt(p.lambda1());
    const double s2 = std::sqrt(p.lambda2());
    return OrthogonalSet({basis_state(0), ket(0.0, s1, s2, 0.0), ket(0.0, s2, -s1, 0.0)}, tol);
}

OrthogonalSet random_max_entangled_triple(std::uint64_t seed) {
    Rng rng(seed);
    const auto rows = random_orthogonal(rng);
    return OrthogonalSet({magic::from_coordinates(rows[0]), magic::from_coordinates(rows[1]),
                          magic::from_coordinates(rows[2])});
}

OrthogonalSet canonical_max_entangled_triple() {
    return OrthogonalSet({magic::from_coordinates({1, 0, 0, 0}), magic::from_coordinates({0, 1, 0, 0}),
                          magic::from_coordinates({0, 0, 1, 0})});
}

std::string_view to_string(UebFailure f) {
    switch (f) {
    case UebFailure::NotAllEntangled: return "NotAllEntangled";
    case UebFailure::ComplementEntangled: return "ComplementEntangled";
    }
    return "Unknown";
}

UebVerdict ueb_check(const OrthogonalSet& set) {
    if (set.size() != 3) {
        throw Error(ErrorCode::BadCardinality,
                    "two-qubit UEBs have exactly three members, got " + std::to_string(set.size()));
    }
    const PureState comp = orthocomplement(set).basis().front();
    const double cc = concurrence(comp);
    UebVerdict v{.is_ueb = false, .complement_state = comp, .complement_concurrence = cc, .reason = std::nullopt};
    if (set.entangled_count() != 3) {
        v.reason = UebFailure::NotAllEntangled;
    } else if (cc >= set.tolerances().zero) {
        v.reason = UebFailure::ComplementEntangled;
    } else {
        v.is_ueb = true;
    }
    return v;
}

SpanningVerdict ueb_spanning_check(const OrthogonalSet& set, const GeneratorParams& witness_params) {
    if (set.size() != 3) {
        throw Error(ErrorCode::BadCardinality, "spanning check needs three states, got " + std::to_string(set.size()));
    }
    const Tolerances& tol = set.tolerances();
    const PureState comp = orthocomplement(set).basis().front();
    const ProductCheck pc = is_product(comp, tol);
    SpanningVerdict v{.spanned_by_ueb = pc.product, .complement_state = comp, .witness = std::nullopt};
    if (!pc.product) {
        return v;
    }
    // Local unitaries sending |1> to each factor carry |11> onto the complement
    // and the canonical UEB onto one spanning this set's subspace.
    const auto to_factor = [](const QubitState& x) {
        const QubitState xp = x.orthogonal();
        LocalUnitary u;
        u.m = {{{xp[0], x[0]}, {xp[1], x[1]}}};
        return u;
    };
    const LocalUnitary ua = to_factor(pc.factors->left);
    const LocalUnitary ub = to_factor(pc.factors->right);
    std::vector<PureState> w;
    const OrthogonalSet canonical = generate_eq1(witness_params, tol);
    for (const PureState& s : canonical.states()) {
        w.push_back(apply_local(ua, ub, s));
    }
    v.witness = OrthogonalSet(std::move(w), tol);
    return v;
}

TripleFamily triple_family(std::uint64_t seed) { return static_cast<TripleFamily>(seed % kTripleFamilies); }

BasisFamily basis_family(std::uint64_t seed) { return static_cast<BasisFamily>(seed % kBasisFamilies); }

OrthogonalSet random_orthogonal_triple(std::uint64_t seed) {
    Rng rng(seed);
    switch (triple_family(seed)) {
    case TripleFamily::Haar: {
        const Unitary4 u = random_unitary(rng);
        return OrthogonalSet({make_state(u[0]), make_state(u[1]), make_state(u[2])});
    }
    case TripleFamily::RotatedEq1: {
        const double l1 = uniform(rng, 0.05, 0.95);
        const double l3 = uniform(rng, 0.05, 0.95);
        return rotated(generate_eq1({l1, l3}), rng);
    }
    case TripleFamily::RotatedEq2:
        return rotated(generate_eq2(uniform(rng, 0.05, 0.95)), rng);
    case TripleFamily::ProductComplement: {
        const PureState p = tensor(random_qubit(rng), random_qubit(rng));
        return OrthogonalSet(random_in_complement(rng, {p}, 3));
    }
    case TripleFamily::OneProductMember: {
        const PureState p = tensor(random_qubit(rng), random_qubit(rng));
        auto rest = random_in_complement(rng, {p}, 2);
        return OrthogonalSet({p, rest[0], rest[1]});
    }
    case TripleFamily::TwoProductMembers: {
        const QubitState x = random_qubit(rng);
        const PureState p1 = tensor(x, random_qubit(rng));
        const PureState p2 = tensor(x.orthogonal(), random_qubit(rng));
        auto rest = random_in_complement(rng, {p1, p2}, 1);
        return OrthogonalSet({p1, p2, rest[0]});
    }
    case TripleFamily::AllProduct: {
        const QubitState x = random_qubit(rng);
        const QubitState y = random_qubit(rng);
        const QubitState z = random_qubit(rng);
        return OrthogonalSet({tensor(x, y), tensor(x, y.orthogonal()), tensor(x.orthogonal(), z)});
    }
    case TripleFamily::MaxEntangled:
        return rotated(random_max_entangled_triple(seed), rng);
    }
    throw Error(ErrorCode::BadParam, "unknown triple family");
}

OrthogonalSet random_orthonormal_basis(std::uint64_t seed) {
    Rng rng(seed);
    switch (basis_family(seed)) {
    case BasisFamily::Haar: {
        const Unitary4 u = random_unitary(rng);
        return OrthogonalSet({make_state(u[0]), make_state(u[1]), make_state(u[2]), make_state(u[3])});
    }
    case BasisFamily::Product: {
        const QubitState x = random_qubit(rng);
        const QubitState y = random_qubit(rng);
        const QubitState z = random_qubit(rng);
        return OrthogonalSet({tensor(x, y), tensor(x, y.orthogonal()), tensor(x.orthogonal(), z),
                              tensor(x.orthogonal(), z.orthogonal())});
    }
    case BasisFamily::TwoEntangled: {
        const QubitState x = random_qubit(rng);
        const QubitState y = random_qubit(rng);
        const QubitState z = random_qubit(rng);
        const PureState p1 = tensor(x, y);
        const PureState p2 = tensor(x.orthogonal(), z);
        auto rest = random_in_complement(rng, {p1, p2}, 2);
        return OrthogonalSet({p1, p2, rest[0], rest[1]});
    }
    case BasisFamily::ThreeEntangled: {
        const PureState p = tensor(random_qubit(rng), random_qubit(rng));
        auto rest = random_in_complement(rng, {p}, 3);
        return OrthogonalSet({p, rest[0], rest[1], rest[2]});
    }
    }
    throw Error(ErrorCode::BadParam, "unknown basis family");
}

}  // namespace uebkit
