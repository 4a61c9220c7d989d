#include "uebkit/ensemble_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "uebkit/error.hpp"

namespace uebkit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ParseError, path + ": " + what);
}

std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) {
        fail(path, "expected a number, got " + std::string(j.type_name()));
    }
    return j.get<double>();
}

double parse_double(std::string_view s, const std::string& what) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::ParseError, what + ": bad number '" + std::string(s) + "'");
    }
    return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k) {
        if (k == s.size() || s[k] == sep) {
            out.push_back(s.substr(start, k - start));
            start = k + 1;
        }
    }
    return out;
}

}  // namespace

EnsembleDocument parse_ensemble(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        fail(line_col(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
    }
    if (!root.is_object()) {
        fail("$", "expected an object");
    }
    if (!root.contains("states")) {
        fail("states", "missing");
    }
    const json& states = root.at("states");
    if (!states.is_array()) {
        fail("states", "expected an array of amplitude quadruples");
    }

    EnsembleDocument doc;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string spath = "states[" + std::to_string(i) + "]";
        const json& quad = states[i];
        if (!quad.is_array() || quad.size() != 4) {
            fail(spath, "expected 4 amplitudes ordered |00>,|01>,|10>,|11>");
        }
        Amplitudes amp;
        for (std::size_t k = 0; k < 4; ++k) {
            const std::string apath = spath + "[" + std::to_string(k) + "]";
            const json& pair = quad[k];
            if (!pair.is_array() || pair.size() != 2) {
                fail(apath, "expected an [re, im] pair");
            }
            amp[k] = cplx{number_at(pair[0], apath + "[0]"), number_at(pair[1], apath + "[1]")};
        }
        doc.states.push_back(amp);
    }

    if (root.contains("labels")) {
        const json& labels = root.at("labels");
        if (!labels.is_array() || labels.size() != doc.states.size()) {
            fail("labels", "expected one string per state");
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!labels[i].is_string()) {
                fail("labels[" + std::to_string(i) + "]", "expected a string");
            }
            doc.labels.push_back(labels[i].get<std::string>());
        }
    }

    if (root.contains("tolerances")) {
        const json& t = root.at("tolerances");
        if (!t.is_object()) {
            fail("tolerances", "expected an object");
        }
        for (const auto& [key, value] : t.items()) {
            const double v = number_at(value, "tolerances." + key);
            if (!(v > 0.0)) {
                fail("tolerances." + key, "must be positive");
            }
            if (key == "orth") {
                doc.tolerances.orth = v;
            } else if (key == "zero") {
                doc.tolerances.zero = v;
            } else if (key == "overlap") {
                doc.tolerances.overlap = v;
            } else if (key == "norm") {
                doc.tolerances.norm = v;
            } else if (key == "disc") {
                doc.tolerances.disc = v;
            } else {
                fail("tolerances." + key, "unknown tolerance");
            }
        }
    }

    if (root.contains("meta")) {
        doc.meta = root.at("meta");
    }
    return doc;
}

OrthogonalSet to_orthogonal_set(const EnsembleDocument& doc) {
    std::vector<PureState> states;
    for (std::size_t i = 0; i < doc.states.size(); ++i) {
        try {
            states.push_back(make_state(doc.states[i], doc.tolerances.zero));
        } catch (const Error& e) {
            fail("states[" + std::to_string(i) + "]", e.what());
        }
    }
    return OrthogonalSet(std::move(states), doc.tolerances);
}

json amplitudes_json(const PureState& s) {
    json out = json::array();
    for (std::size_t k = 0; k < 4; ++k) {
        out.push_back(json::array({s[k].real(), s[k].imag()}));
    }
    return out;
}

json ensemble_json(const OrthogonalSet& set, const std::vector<std::string>& labels, const json& meta) {
    json doc;
    doc["states"] = json::array();
    for (const PureState& s : set.states()) {
        doc["states"].push_back(amplitudes_json(s));
    }
    if (!labels.empty()) {
        doc["labels"] = labels;
    }
    if (!meta.empty()) {
        doc["meta"] = meta;
    }
    return doc;
}

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kSweepHeader << '\n';
    for (const SweepRecord& r : records) {
        os << format_number(r.lambda1) << ',' << (r.lambda3 ? format_number(*r.lambda3) : std::string()) << ','
           << r.cls << ',';
        for (std::size_t k = 0; k < r.unidentifiable.size(); ++k) {
            os << (k ? ";" : "") << r.unidentifiable[k];
        }
        os << ',' << format_number(r.avg_entanglement) << ',' << (r.is_ueb ? "true" : "false") << '\n';
    }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSweepHeader) {
        throw Error(ErrorCode::ParseError, "sweep CSV: missing or unexpected header");
    }
    std::vector<SweepRecord> out;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) {
            continue;
        }
        const std::string where = "sweep CSV row " + std::to_string(row);
        const auto f = split(line, ',');
        if (f.size() != 6) {
            throw Error(ErrorCode::ParseError, where + ": expected 6 fields");
        }
        SweepRecord r;
        r.lambda1 = parse_double(f[0], where);
        if (!f[1].empty()) {
            r.lambda3 = parse_double(f[1], where);
        }
        r.cls = std::string(f[2]);
        if (!f[3].empty()) {
            for (const std::string_view idx : split(f[3], ';')) {
                r.unidentifiable.push_back(static_cast<std::size_t>(parse_double(idx, where)));
            }
        }
        r.avg_entanglement = parse_double(f[4], where);
        if (f[5] != "true" && f[5] != "false") {
            throw Error(ErrorCode::ParseError, where + ": is_ueb must be true or false");
        }
        r.is_ueb = f[5] == "true";
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace uebkit
