#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uebkit/orthogonal_set.hpp"
#include "uebkit/qstate.hpp"
#include "uebkit/tolerances.hpp"

namespace uebkit {

// Ensemble document (JSON):
//   {
//     "states": [ [[re, im], [re, im], [re, im], [re, im]], ... ],   // |00>,|01>,|10>,|11>
//     "labels": ["psi1", ...],                                       // optional
//     "tolerances": {"orth": 1e-9, "zero": 1e-9, "overlap": 1e-7},    // optional overrides
//     "meta": {...}                                                  // optional, passed through
//   }
struct EnsembleDocument {
    std::vector<Amplitudes> states;
    std::vector<std::string> labels;
    Tolerances tolerances;
    nlohmann::json meta = nlohmann::json::object();
};

/// Throws Error(ParseError) with a line/column or a field path such as
/// "states[1][2][0]".
EnsembleDocument parse_ensemble(std::string_view text);

/// Normalizes each state and validates orthogonality; errors name the
/// offending pair and its overlap modulus.
OrthogonalSet to_orthogonal_set(const EnsembleDocument& doc);

nlohmann::json amplitudes_json(const PureState& s);
nlohmann::json ensemble_json(const OrthogonalSet& set, const std::vector<std::string>& labels = {},
                             const nlohmann::json& meta = nlohmann::json::object());

/// One grid point of a parameter sweep.
struct SweepRecord {
    double lambda1 = 0.0;
    std::optional<double> lambda3;  // absent for the one-parameter family
    std::string cls;
    std::vector<std::size_t> unidentifiable;
    double avg_entanglement = 0.0;  // ebits
    bool is_ueb = false;
};

inline constexpr std::string_view kSweepHeader = "lambda1,lambda3,class,unidentifiable,avg_entanglement,is_ueb";

/// 12 significant digits, '.' separator, independent of the global locale.
std::string format_number(double x);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_sweep_csv(std::istream& is);

}  // namespace uebkit
