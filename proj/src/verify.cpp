#include "uebkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "uebkit/discrimination.hpp"
#include "uebkit/error.hpp"
#include "uebkit/oracle.hpp"
#include "uebkit/product_finder.hpp"
#include "uebkit/sampling.hpp"
#include "uebkit/ueb.hpp"

namespace uebkit {

namespace {

std::vector<double> lambda_grid() {
    std::vector<double> out;
    for (int k = 1; k <= 19; ++k) {
        out.push_back(0.05 * k);
    }
    return out;
}

void violation(SuiteResult& r, const std::string& what) {
    if (r.violations++ == 0) {
        r.first_violation = what;
    }
}

SuiteResult prop1(std::size_t count, std::uint64_t seed) {
    SuiteResult r{.name = "prop1", .worst = 1.0, .worst_label = "min witness overlap", .first_violation = {}};
    for (std::size_t k = 0; k < count; ++k) {
        const OrthogonalSet set = random_max_entangled_triple(seed + k);
        const Classification c = classify(set);
        ++r.checked;
        if (c.cls.label != ClassLabel::ConclusiveOnly) {
            violation(r, "seed " + std::to_string(seed + k) + " classified " + c.cls.name());
            continue;
        }
        for (const Identification& id : c.report.per_state) {
            if (!id.witness || !witness_valid(set, id.index, id.witness->state)) {
                violation(r, "seed " + std::to_string(seed + k) + " invalid witness");
                continue;
            }
            r.worst = std::min(r.worst, id.witness->overlap);
        }
    }
    return r;
}

SuiteResult prop2() {
    SuiteResult r{.name = "prop2", .worst_label = "max complement concurrence", .first_violation = {}};
    for (const double l1 : lambda_grid()) {
        for (const double l3 : lambda_grid()) {
            const OrthogonalSet set = generate_eq1({l1, l3});
            const Classification c = classify(set);
            const UebVerdict u = ueb_check(set);
            ++r.checked;
            r.worst = std::max(r.worst, u.complement_concurrence);
            if (c.cls.label != ClassLabel::OneUnidentifiable || c.report.unidentifiable() != std::vector<std::size_t>{0} ||
                !u.is_ueb) {
                violation(r, "lambda1=" + std::to_string(l1) + " lambda3=" + std::to_string(l3));
            }
        }
    }
    return r;
}

SuiteResult eq2() {
    SuiteResult r{.name = "eq2", .worst = 1.0, .worst_label = "min |00> witness overlap", .first_violation = {}};
    for (const double l1 : lambda_grid()) {
        const OrthogonalSet set = generate_eq2(l1);
        const Classification c = classify(set);
        ++r.checked;
        const auto& w = c.report.per_state[0].witness;
        if (c.cls.label != ClassLabel::TwoUnidentifiable ||
            c.report.unidentifiable() != std::vector<std::size_t>{1, 2} || !w || !w->state.same_ray(basis_state(0))) {
            violation(r, "lambda1=" + std::to_string(l1));
            continue;
        }
        r.worst = std::min(r.worst, w->overlap);
    }
    return r;
}

SuiteResult impossibility(std::size_t count, std::uint64_t seed) {
    SuiteResult r{.name = "impossibility", .worst_label = "max unidentifiable members", .first_violation = {}};
    for (std::size_t k = 0; k < count; ++k) {
        ++r.checked;
        try {
            const Classification c = classify(random_orthogonal_triple(seed + k));
            r.worst = std::max(r.worst, static_cast<double>(c.report.unidentifiable().size()));
        } catch (const Error& e) {
            violation(r, "seed " + std::to_string(seed + k) + ": " + e.what());
        }
    }
    return r;
}

SuiteResult complete_basis(std::size_t count, std::uint64_t seed) {
    SuiteResult r{.name = "complete-basis", .worst_label = "bases with zero entangled members", .first_violation = {}};
    for (std::size_t k = 0; k < count; ++k) {
        const OrthogonalSet basis = random_orthonormal_basis(seed + k);
        const Classification c = classify(basis);
        ++r.checked;
        const bool none_entangled = c.cls.entangled_count == 0;
        r.worst += none_entangled ? 1.0 : 0.0;
        if (c.report.conclusively_distinguishable != none_entangled) {
            violation(r, "seed " + std::to_string(seed + k));
        }
    }
    return r;
}

SuiteResult footnote2(std::size_t count, std::uint64_t seed) {
    SuiteResult r{.name = "footnote2", .worst_label = "bases with exactly one entangled member", .first_violation = {}};
    for (std::size_t k = 0; k < count; ++k) {
        ++r.checked;
        if (random_orthonormal_basis(seed + k).entangled_count() == 1) {
            r.worst += 1.0;
            violation(r, "seed " + std::to_string(seed + k));
        }
    }
    return r;
}

SuiteResult sanpera(std::size_t count, std::uint64_t seed) {
    SuiteResult r{.name = "sanpera", .worst_label = "max concurrence of a returned state", .first_violation = {}};
    for (std::size_t k = 0; k < count; ++k) {
        Rng rng(seed + k);
        const std::array<PureState, 2> pair{random_state(rng), random_state(rng)};
        const Subspace sub = Subspace::span_of(pair);
        const ProductStateEnumeration e = product_states_in_2d(sub);
        ++r.checked;
        if (e.states.empty()) {
            violation(r, "seed " + std::to_string(seed + k) + ": no product state");
        }
        for (const PureState& s : e.states) {
            const double c = concurrence(s);
            r.worst = std::max(r.worst, c);
            if (!(c < 1e-9) || !(sub.projection_weight(s) > 1.0 - 1e-9)) {
                violation(r, "seed " + std::to_string(seed + k) + ": unsound product state");
            }
        }
    }
    return r;
}

SuiteResult bravyi(std::size_t count, std::uint64_t seed) {
    SuiteResult r{.name = "bravyi", .worst_label = "max |1 - complement concurrence|", .first_violation = {}};
    for (std::size_t k = 0; k < count; ++k) {
        const double c = ueb_check(random_max_entangled_triple(seed + k)).complement_concurrence;
        ++r.checked;
        r.worst = std::max(r.worst, std::abs(1.0 - c));
        if (!(std::abs(1.0 - c) < 1e-9)) {
            violation(r, "seed " + std::to_string(seed + k));
        }
    }
    return r;
}

SuiteResult oracle(std::size_t count, std::uint64_t seed) {
    SuiteResult r{.name = "oracle", .worst_label = "max oracle zero-overlap residual", .first_violation = {}};
    const Oracle o;
    for (std::size_t k = 0; k < count; ++k) {
        const OrthogonalSet set = random_orthogonal_triple(seed + k);
        for (std::size_t i = 0; i < 3; ++i) {
            ++r.checked;
            const bool analytic = conclusively_identifiable(set, i).identifiable;
            const OracleVerdict v = o.identifiable(set, i);
            if (v.identifiable) {
                r.worst = std::max(r.worst, v.zero_overlaps);
            }
            if (analytic != v.identifiable) {
                violation(r, "seed " + std::to_string(seed + k) + " member " + std::to_string(i));
            }
        }
    }
    return r;
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
    static const std::vector<std::string_view> names{"prop1",  "prop2",  "eq2",    "impossibility", "complete-basis",
                                                     "footnote2", "sanpera", "bravyi", "oracle"};
    return names;
}

std::size_t default_count(std::string_view suite) {
    static const std::map<std::string_view, std::size_t> counts{
        {"prop1", 1000},          {"prop2", 361},     {"eq2", 19},      {"impossibility", 10000},
        {"complete-basis", 1000}, {"footnote2", 1000}, {"sanpera", 10000}, {"bravyi", 1000},
        {"oracle", 20}};
    const auto it = counts.find(suite);
    if (it == counts.end()) {
        throw Error(ErrorCode::BadParam, "unknown suite '" + std::string(suite) + "'");
    }
    return it->second;
}

SuiteResult run_suite(std::string_view suite, std::optional<std::size_t> count, std::uint64_t seed) {
    const std::size_t n = count.value_or(default_count(suite));
    if (suite == "prop1") return prop1(n, seed);
    if (suite == "prop2") return prop2();
    if (suite == "eq2") return eq2();
    if (suite == "impossibility") return impossibility(n, seed);
    if (suite == "complete-basis") return complete_basis(n, seed);
    if (suite == "footnote2") return footnote2(n, seed);
    if (suite == "sanpera") return sanpera(n, seed);
    if (suite == "bravyi") return bravyi(n, seed);
    if (suite == "oracle") return oracle(n, seed);
    throw Error(ErrorCode::BadParam, "unknown suite '" + std::string(suite) + "'");
}

}  // namespace uebkit
