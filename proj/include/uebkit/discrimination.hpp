#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uebkit/orthogonal_set.hpp"
#include "uebkit/qstate.hpp"

namespace uebkit {

/// A product state nonorthogonal to the target and orthogonal to every other
/// member of the set; its existence is necessary and sufficient for conclusive
/// identification of the target under LOCC.
struct Witness {
    PureState state;
    double overlap = 0.0;  // |<witness|target>|
};

struct Identification {
    std::size_t index = 0;
    bool identifiable = false;
    // True when the verdict comes from a cardinality rule rather than a witness search.
    bool by_rule = false;
    std::optional<Witness> witness;
    // Witness overlap inside the warning band just above the overlap threshold.
    bool near_threshold = false;
};

/// Chefles test for member `i`.
///
/// The candidate witnesses are the product states in the orthocomplement K
/// of the other members. Three members: K is 2-D and its product states are
/// enumerated exactly. Four members: K = span{psi_i}, so psi_i must itself be
/// a product state. Two members: identifiable by rule; a witness is still
/// searched for and attached when found. Among valid witnesses the one with
/// the largest overlap wins (ties go to the lexicographically largest
/// amplitudes).
///
/// Throws Error(IndexOutOfRange) for a bad index.
Identification conclusively_identifiable(const OrthogonalSet& set, std::size_t i);

/// Rule-based: 2 members always; 3 members iff at most one is entangled;
/// 4 members iff none is entangled.
bool perfectly_distinguishable(const OrthogonalSet& set);

struct IdentifiabilityReport {
    std::vector<Identification> per_state;
    bool conclusively_distinguishable = false;
    bool perfectly_distinguishable = false;

    std::vector<std::size_t> unidentifiable() const;
};

enum class ClassLabel { PerfectLOCC, ConclusiveOnly, OneUnidentifiable, TwoUnidentifiable, CompleteBasis };

std::string_view to_string(ClassLabel label);
std::optional<ClassLabel> parse_class_label(std::string_view text);

/// Position in the nonlocality order PerfectLOCC < ConclusiveOnly <
/// OneUnidentifiable < TwoUnidentifiable. CompleteBasis sits outside it.
std::optional<int> nonlocality_rank(ClassLabel label);

struct NonlocalityClass {
    ClassLabel label = ClassLabel::PerfectLOCC;
    std::size_t entangled_count = 0;
    // Three members only: whether a UEB spans the same subspace.
    std::optional<bool> ueb_span;

    /// "CompleteBasis(n)" for bases, the plain label otherwise.
    std::string name() const;
};

struct Classification {
    NonlocalityClass cls;
    IdentifiabilityReport report;
};

/// Throws Error(InternalContradiction) if three members all come out
/// unidentifiable, which no orthogonal two-qubit triple admits.
Classification classify(const OrthogonalSet& set);

/// Re-checks the Chefles conditions for `w` against member `i` by direct inner
/// products at the set's tolerances.
bool witness_valid(const OrthogonalSet& set, std::size_t i, const PureState& w);

}  // namespace uebkit
