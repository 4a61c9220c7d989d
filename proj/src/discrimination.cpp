#include "uebkit/discrimination.hpp"

#include <cmath>

#include "uebkit/error.hpp"
#include "uebkit/product_finder.hpp"
#include "uebkit/ueb.hpp"

namespace uebkit {

namespace {

constexpr double kTieTolerance = 1e-12;

bool lexicographically_greater(const PureState& a, const PureState& b) {
    for (std::size_t k = 0; k < 4; ++k) {
        const double dr = a[k].real() - b[k].real();
        if (std::abs(dr) > kTieTolerance) {
            return dr > 0.0;
        }
        const double di = a[k].imag() - b[k].imag();
        if (std::abs(di) > kTieTolerance) {
            return di > 0.0;
        }
    }
    return false;
}

// Product states of a 2-D subspace worth testing as witnesses for `target`:
// the exact roots, or for an all-product subspace three representatives plus
// the family member closest to the target.
std::vector<PureState> candidates_in(const Subspace& k, const PureState& target, const Tolerances& tol) {
    ProductStateEnumeration e = product_states_in_2d(k, tol);
    std::vector<PureState> out = e.states;
    if (e.kind != ProductKind::AllProduct) {
        return out;
    }
    const auto m = CoefficientMatrix::from(target).m;
    const QubitState& f = *e.fixed_factor;
    std::array<cplx, 2> partner{};
    if (*e.fixed_side == FactorSide::Left) {
        for (int c = 0; c < 2; ++c) {
            partner[c] = std::conj(f[0]) * m[0][c] + std::conj(f[1]) * m[1][c];
        }
    } else {
        for (int r = 0; r < 2; ++r) {
            partner[r] = m[r][0] * std::conj(f[0]) + m[r][1] * std::conj(f[1]);
        }
    }
    if (std::abs(partner[0]) + std::abs(partner[1]) > tol.zero) {
        const QubitState p = QubitState::make(partner[0], partner[1], tol.zero);
        out.push_back(*e.fixed_side == FactorSide::Left ? tensor(f, p) : tensor(p, f));
    }
    return out;
}

std::optional<Witness> best_witness(const OrthogonalSet& set, std::size_t i, const std::vector<PureState>& candidates) {
    std::optional<Witness> best;
    for (const PureState& w : candidates) {
        if (!witness_valid(set, i, w)) {
            continue;
        }
        const double ov = std::abs(inner(w, set[i]));
        if (!best || ov > best->overlap + kTieTolerance ||
            (std::abs(ov - best->overlap) <= kTieTolerance && lexicographically_greater(w, best->state))) {
            best = Witness{w, ov};
        }
    }
    return best;
}

Identification finish(std::size_t i, std::optional<Witness> w, const Tolerances& tol) {
    Identification id;
    id.index = i;
    id.identifiable = w.has_value();
    if (w) {
        id.near_threshold = w->overlap <= kWarningBandFactor * tol.overlap;
    }
    id.witness = std::move(w);
    return id;
}

}  // namespace

bool witness_valid(const OrthogonalSet& set, std::size_t i, const PureState& w) {
    const Tolerances& tol = set.tolerances();
    if (concurrence(w) >= tol.zero) {
        return false;
    }
    for (std::size_t j = 0; j < set.size(); ++j) {
        const double ov = std::abs(inner(w, set[j]));
        if (j == i ? !(ov > tol.overlap) : !(ov < tol.orth)) {
            return false;
        }
    }
    return true;
}

Identification conclusively_identifiable(const OrthogonalSet& set, std::size_t i) {
    if (i >= set.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "index " + std::to_string(i) + " for a set of " + std::to_string(set.size()) + " states");
    }
    const Tolerances& tol = set.tolerances();
    const PureState& target = set[i];

    switch (set.size()) {
    case 2: {
        // Two orthogonal states are always perfectly distinguishable by LOCC.
        // Search span{target, k} for k in the complement of the pair.
        const Subspace rest = orthocomplement(set);
        const auto& l = rest.basis();
        const double h = 1.0 / std::sqrt(2.0);
        const PureState mixed = make_state({h * (l[0][0] + l[1][0]), h * (l[0][1] + l[1][1]),
                                            h * (l[0][2] + l[1][2]), h * (l[0][3] + l[1][3])});
        std::optional<Witness> w;
        for (const PureState& k : {l[0], l[1], mixed}) {
            const Subspace sub = Subspace::from_orthonormal({target, k}, tol);
            w = best_witness(set, i, candidates_in(sub, target, tol));
            if (w) {
                break;
            }
        }
        Identification id = finish(i, std::move(w), tol);
        id.identifiable = true;
        id.by_rule = true;
        return id;
    }
    case 3: {
        std::vector<PureState> others;
        for (std::size_t j = 0; j < 3; ++j) {
            if (j != i) {
                others.push_back(set[j]);
            }
        }
        const Subspace k = orthocomplement(std::span<const PureState>(others), tol);
        return finish(i, best_witness(set, i, candidates_in(k, target, tol)), tol);
    }
    default:
        return finish(i, best_witness(set, i, {target}), tol);
    }
}

bool perfectly_distinguishable(const OrthogonalSet& set) {
    const std::size_t n = set.entangled_count();
    switch (set.size()) {
    case 2: return true;
    case 3: return n <= 1;
    default: return n == 0;
    }
}

std::vector<std::size_t> IdentifiabilityReport::unidentifiable() const {
    std::vector<std::size_t> out;
    for (const Identification& id : per_state) {
        if (!id.identifiable) {
            out.push_back(id.index);
        }
    }
    return out;
}

std::string_view to_string(ClassLabel label) {
    switch (label) {
    case ClassLabel::PerfectLOCC: return "PerfectLOCC";
    case ClassLabel::ConclusiveOnly: return "ConclusiveOnly";
    case ClassLabel::OneUnidentifiable: return "OneUnidentifiable";
    case ClassLabel::TwoUnidentifiable: return "TwoUnidentifiable";
    case ClassLabel::CompleteBasis: return "CompleteBasis";
    }
    return "Unknown";
}

std::optional<ClassLabel> parse_class_label(std::string_view text) {
    for (const ClassLabel l : {ClassLabel::PerfectLOCC, ClassLabel::ConclusiveOnly, ClassLabel::OneUnidentifiable,
                               ClassLabel::TwoUnidentifiable, ClassLabel::CompleteBasis}) {
        if (text == to_string(l) || (l == ClassLabel::CompleteBasis && text.starts_with("CompleteBasis("))) {
            return l;
        }
    }
    return std::nullopt;
}

std::optional<int> nonlocality_rank(ClassLabel label) {
    switch (label) {
    case ClassLabel::PerfectLOCC: return 0;
    case ClassLabel::ConclusiveOnly: return 1;
    case ClassLabel::OneUnidentifiable: return 2;
    case ClassLabel::TwoUnidentifiable: return 3;
    case ClassLabel::CompleteBasis: return std::nullopt;
    }
    return std::nullopt;
}

std::string NonlocalityClass::name() const {
    if (label == ClassLabel::CompleteBasis) {
        return "CompleteBasis(" + std::to_string(entangled_count) + ")";
    }
    return std::string(to_string(label));
}

Classification classify(const OrthogonalSet& set) {
    Classification out;
    IdentifiabilityReport& rep = out.report;
    rep.perfectly_distinguishable = perfectly_distinguishable(set);
    rep.conclusively_distinguishable = true;
    for (std::size_t i = 0; i < set.size(); ++i) {
        rep.per_state.push_back(conclusively_identifiable(set, i));
        rep.conclusively_distinguishable = rep.conclusively_distinguishable && rep.per_state.back().identifiable;
    }
    out.cls.entangled_count = set.entangled_count();
    const std::size_t missing = rep.unidentifiable().size();

    if (rep.perfectly_distinguishable && missing > 0) {
        throw Error(ErrorCode::InternalContradiction,
                    "perfectly distinguishable set has a member without a witness; tolerances too tight?");
    }
    switch (set.size()) {
    case 2:
        out.cls.label = ClassLabel::PerfectLOCC;
        break;
    case 3:
        out.cls.ueb_span = ueb_spanning_check(set).spanned_by_ueb;
        if (rep.perfectly_distinguishable) {
            out.cls.label = ClassLabel::PerfectLOCC;
        } else if (missing == 0) {
            out.cls.label = ClassLabel::ConclusiveOnly;
        } else if (missing == 1) {
            out.cls.label = ClassLabel::OneUnidentifiable;
        } else if (missing == 2) {
            out.cls.label = ClassLabel::TwoUnidentifiable;
        } else {
            throw Error(ErrorCode::InternalContradiction,
                        "all three members unidentifiable; no orthogonal two-qubit triple admits this");
        }
        break;
    default:
        out.cls.label = ClassLabel::CompleteBasis;
        break;
    }
    return out;
}

}  // namespace uebkit
