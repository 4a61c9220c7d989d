#include "uebkit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "uebkit/discrimination.hpp"
#include "uebkit/ensemble_io.hpp"
#include "uebkit/error.hpp"
#include "uebkit/ueb.hpp"
#include "uebkit/verify.hpp"

namespace uebkit::cli {

namespace {

using nlohmann::json;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string index_list(const std::vector<std::size_t>& idx) {
    if (idx.empty()) {
        return "none";
    }
    std::string s = idx.size() == 1 ? "state " : "states ";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        s += (k ? ", " : "") + std::to_string(idx[k]);
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw Error(ErrorCode::BadParam, "cannot write '" + path + "'");
    }
    os << content;
}

std::string summary_line(const OrthogonalSet& set, const Classification& c) {
    if (set.size() == 3) {
        return c.cls.name() + "; unidentifiable: " + index_list(c.report.unidentifiable()) +
               "; UEB: " + yes_no(ueb_check(set).is_ueb);
    }
    return c.cls.name() + "; conclusively distinguishable: " + yes_no(c.report.conclusively_distinguishable);
}

json classification_json(const OrthogonalSet& set, const Classification& c, const std::vector<std::string>& labels) {
    json j;
    j["class"] = c.cls.name();
    j["label"] = std::string(to_string(c.cls.label));
    j["entangled_count"] = c.cls.entangled_count;
    if (c.cls.ueb_span) {
        j["ueb_span"] = *c.cls.ueb_span;
    }
    j["perfectly_distinguishable"] = c.report.perfectly_distinguishable;
    j["conclusively_distinguishable"] = c.report.conclusively_distinguishable;
    j["unidentifiable"] = c.report.unidentifiable();
    j["average_entanglement"] = average_entanglement(set);
    j["states"] = json::array();
    for (const Identification& id : c.report.per_state) {
        const EntanglementProfile p = entanglement_profile(set[id.index], set.tolerances());
        json s;
        s["index"] = id.index;
        if (!labels.empty()) {
            s["label"] = labels[id.index];
        }
        s["amplitudes"] = amplitudes_json(set[id.index]);
        s["concurrence"] = p.concurrence;
        s["schmidt_coefficients"] = p.schmidt_coefficients;
        s["entropy"] = p.entropy;
        s["identifiable"] = id.identifiable;
        s["by_rule"] = id.by_rule;
        s["near_threshold"] = id.near_threshold;
        if (id.witness) {
            s["witness"] = {{"amplitudes", amplitudes_json(id.witness->state)}, {"overlap", id.witness->overlap}};
        } else {
            s["witness"] = nullptr;
        }
        j["states"].push_back(s);
    }
    if (set.size() == 3) {
        const UebVerdict u = ueb_check(set);
        j["ueb"] = {{"is_ueb", u.is_ueb},
                    {"complement", amplitudes_json(u.complement_state)},
                    {"complement_concurrence", u.complement_concurrence},
                    {"reason", u.reason ? json(std::string(to_string(*u.reason))) : json(nullptr)}};
    }
    j["warnings"] = set.warnings();
    j["summary"] = summary_line(set, c);
    return j;
}

void print_report(std::ostream& out, const OrthogonalSet& set, const Classification& c,
                  const std::vector<std::string>& labels) {
    out << "ensemble of " << set.size() << " orthogonal two-qubit states\n";
    for (const Identification& id : c.report.per_state) {
        const EntanglementProfile p = entanglement_profile(set[id.index], set.tolerances());
        out << "state " << id.index;
        if (!labels.empty()) {
            out << " (" << labels[id.index] << ")";
        }
        out << ": " << to_string(set[id.index]) << "\n"
            << "  concurrence " << format_number(p.concurrence) << ", entropy " << format_number(p.entropy)
            << " ebits\n"
            << "  conclusively identifiable by LOCC: " << yes_no(id.identifiable) << (id.by_rule ? " (by rule)" : "")
            << "\n";
        if (id.witness) {
            out << "  witness " << to_string(id.witness->state, 12) << " overlap " << format_number(id.witness->overlap)
                << (id.near_threshold ? " [near threshold]" : "") << "\n";
        }
    }
    out << "perfectly distinguishable by LOCC: " << yes_no(c.report.perfectly_distinguishable) << "\n"
        << "conclusively distinguishable by LOCC: " << yes_no(c.report.conclusively_distinguishable) << "\n"
        << "entangled members: " << c.cls.entangled_count << "\n"
        << "average entanglement: " << format_number(average_entanglement(set)) << " ebits\n";
    if (set.size() == 3) {
        const UebVerdict u = ueb_check(set);
        out << "UEB: " << yes_no(u.is_ueb) << (u.reason ? " (" + std::string(to_string(*u.reason)) + ")" : "")
            << "; complement " << to_string(u.complement_state) << " concurrence "
            << format_number(u.complement_concurrence) << "\n"
            << "span shared with a UEB: " << yes_no(c.cls.ueb_span.value_or(false)) << "\n";
    }
    for (const std::string& w : set.warnings()) {
        out << "warning: " << w << "\n";
    }
    out << "summary: " << summary_line(set, c) << "\n";
}

std::vector<double> parse_grid(const std::string& spec, std::size_t& steps_out) {
    std::vector<double> v;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
        } catch (const std::exception&) {
            throw Error(ErrorCode::BadBounds, "grid '" + spec + "' is not lo,hi,steps");
        }
    }
    if (v.size() != 3) {
        throw Error(ErrorCode::BadBounds, "grid '" + spec + "' is not lo,hi,steps");
    }
    const double lo = v[0];
    const double hi = v[1];
    const double steps = v[2];
    if (!(lo > 0.0 && hi < 1.0 && lo <= hi) || steps < 2 || steps != std::floor(steps)) {
        throw Error(ErrorCode::BadBounds, "grid needs 0 < lo <= hi < 1 and an integer steps >= 2");
    }
    steps_out = static_cast<std::size_t>(steps);
    std::vector<double> pts;
    for (std::size_t k = 0; k < steps_out; ++k) {
        pts.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps_out - 1));
    }
    return pts;
}

SweepRecord sweep_point(const OrthogonalSet& set, double l1, std::optional<double> l3) {
    const Classification c = classify(set);
    return {.lambda1 = l1,
            .lambda3 = l3,
            .cls = c.cls.name(),
            .unidentifiable = c.report.unidentifiable(),
            .avg_entanglement = average_entanglement(set),
            .is_ueb = ueb_check(set).is_ueb};
}

int cmd_classify(const std::string& path, std::optional<double> tolerance, const std::string& json_out,
                 std::ostream& out) {
    EnsembleDocument doc = parse_ensemble(read_file(path));
    if (tolerance) {
        doc.tolerances.orth = *tolerance;
    }
    const OrthogonalSet set = to_orthogonal_set(doc);
    const Classification c = classify(set);
    print_report(out, set, c, doc.labels);
    if (!json_out.empty()) {
        write_file(json_out, classification_json(set, c, doc.labels).dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_sweep(const std::string& family, const std::string& grid, const std::string& path, std::ostream& out,
              std::ostream& err) {
    std::size_t steps = 0;
    const std::vector<double> pts = parse_grid(grid, steps);
    std::vector<SweepRecord> rows;
    if (family == "eq1") {
        for (const double l1 : pts) {
            for (const double l3 : pts) {
                rows.push_back(sweep_point(generate_eq1({l1, l3}), l1, l3));
            }
        }
    } else if (family == "eq2") {
        for (const double l1 : pts) {
            rows.push_back(sweep_point(generate_eq2(l1), l1, std::nullopt));
        }
    } else {
        throw Error(ErrorCode::BadParam, "unknown family '" + family + "' (expected eq1 or eq2)");
    }
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    std::ostream& note = path.empty() ? err : out;
    if (path.empty()) {
        out << csv.str();
    } else {
        write_file(path, csv.str());
    }
    const bool uniform = std::all_of(rows.begin(), rows.end(), [&](const SweepRecord& r) { return r.cls == rows[0].cls; });
    if (uniform) {
        note << "class uniform across " << rows.size() << " points: " << rows[0].cls << "\n";
        return kExitOk;
    }
    note << "class NOT uniform across " << rows.size() << " points\n";
    return kExitViolation;
}

int cmd_demo_trit(double l1, double l3, std::ostream& out) {
    const OrthogonalSet set = generate_eq1({l1, l3});
    const Classification c = classify(set);
    out << "trit encoding on the UEB with lambda1 = " << format_number(l1) << ", lambda3 = " << format_number(l3)
        << ":\n"
        << "  0 -> psi1 " << to_string(set[0]) << "\n"
        << "  1 -> psi2 " << to_string(set[1]) << "\n"
        << "  2 -> psi3 " << to_string(set[2]) << "\n"
        << "complement of the code space: " << to_string(ueb_check(set).complement_state) << "\n";
    std::string summary;
    for (const Identification& id : c.report.per_state) {
        const std::string verdict = id.identifiable ? "recoverable" : "protected";
        out << "trit " << id.index << ": " << verdict;
        if (id.witness) {
            out << " by conclusive LOCC, witness " << to_string(id.witness->state) << " overlap "
                << format_number(id.witness->overlap);
        } else {
            out << ", no product state is orthogonal to the other two codewords without also being orthogonal to this "
                   "one";
        }
        out << "\n";
        summary += (id.index ? "; " : "") + std::string("trit ") + std::to_string(id.index) + ": " + verdict;
    }
    for (const std::string& w : set.warnings()) {
        out << "warning: " << w << "\n";
    }
    out << "summary: " << summary << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::optional<std::size_t> count, std::uint64_t seed, std::ostream& out) {
    std::vector<std::string_view> suites;
    if (suite == "all") {
        suites = suite_names();
    } else {
        default_count(suite);  // validates the name
        suites.push_back(suite);
    }
    bool ok = true;
    for (const std::string_view s : suites) {
        const SuiteResult r = run_suite(s, count, seed);
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << (r.checked - r.violations) << "/" << r.checked
            << " passed; " << r.worst_label << " = " << format_number(r.worst);
        if (!r.passed()) {
            out << "; first violation: " << r.first_violation;
        }
        out << "\n";
        ok = ok && r.passed();
    }
    return ok ? kExitOk : kExitViolation;
}

int cmd_generate(const std::string& family, double l1, double l3, std::uint64_t seed, const std::string& path,
                 std::ostream& out) {
    json meta{{"family", family}};
    std::vector<std::string> labels;
    std::optional<OrthogonalSet> set;
    if (family == "eq1") {
        set = generate_eq1({l1, l3});
        labels = {"psi1", "psi2", "psi3"};
        meta["lambda1"] = l1;
        meta["lambda3"] = l3;
        meta["declared_class"] = "OneUnidentifiable";
    } else if (family == "eq2") {
        set = generate_eq2(l1);
        labels = {"Psi1", "Psi2", "Psi3"};
        meta["lambda1"] = l1;
        meta["declared_class"] = "TwoUnidentifiable";
    } else if (family == "bell-triple") {
        set = OrthogonalSet({bell::phi_plus(), bell::phi_minus(), bell::psi_plus()});
        labels = {"phi+", "phi-", "psi+"};
        meta["declared_class"] = "ConclusiveOnly";
    } else if (family == "bell-basis") {
        set = OrthogonalSet({bell::phi_plus(), bell::phi_minus(), bell::psi_plus(), bell::psi_minus()});
        labels = {"phi+", "phi-", "psi+", "psi-"};
        meta["declared_class"] = "CompleteBasis(4)";
    } else if (family == "random-met") {
        set = random_max_entangled_triple(seed);
        meta["seed"] = seed;
        meta["declared_class"] = "ConclusiveOnly";
    } else {
        throw Error(ErrorCode::BadParam,
                    "unknown family '" + family + "' (expected eq1, eq2, bell-triple, bell-basis or random-met)");
    }
    const std::string text = ensemble_json(*set, labels, meta).dump(2) + "\n";
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local distinguishability of two-qubit orthogonal ensembles"};
    app.require_subcommand(1);

    std::string path;
    std::string json_out;
    std::optional<double> tolerance;
    auto* classify_cmd = app.add_subcommand("classify", "Classify an ensemble document");
    classify_cmd->add_option("file", path, "Ensemble document (JSON)")->required();
    classify_cmd->add_option("--tolerance", tolerance, "Orthogonality tolerance override");
    classify_cmd->add_option("--out", json_out, "Write the machine-readable report here");

    std::string family = "eq1";
    std::string grid = "0.1,0.9,5";
    std::string sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep over a UEB family");
    sweep_cmd->add_option("--family", family, "eq1 or eq2");
    sweep_cmd->add_option("--grid", grid, "lo,hi,steps");
    sweep_cmd->add_option("--out", sweep_out, "CSV path (stdout if omitted)");

    double l1 = 0.3;
    double l3 = 0.4;
    auto* demo_cmd = app.add_subcommand("demo-trit", "Trit encoding with one LOCC-protected value");
    demo_cmd->add_option("--lambda1", l1);
    demo_cmd->add_option("--lambda3", l3);

    std::string suite = "all";
    std::optional<std::size_t> count;
    std::uint64_t seed = kDefaultSeed;
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant batteries");
    verify_cmd->add_option("--suite", suite, "all or one suite name");
    verify_cmd->add_option("--count", count, "Instances per suite");
    verify_cmd->add_option("--seed", seed, "First seed");

    std::string gen_family = "eq1";
    std::string gen_out;
    double gl1 = 0.3;
    double gl3 = 0.4;
    std::uint64_t gen_seed = kDefaultSeed;
    auto* gen_cmd = app.add_subcommand("generate", "Emit an ensemble document");
    gen_cmd->add_option("--family", gen_family, "eq1, eq2, bell-triple, bell-basis or random-met");
    gen_cmd->add_option("--lambda1", gl1);
    gen_cmd->add_option("--lambda3", gl3);
    gen_cmd->add_option("--seed", gen_seed);
    gen_cmd->add_option("--out", gen_out, "Output path (stdout if omitted)");

    std::vector<std::string> argv_store{"uebkit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        if (*classify_cmd) return cmd_classify(path, tolerance, json_out, out);
        if (*sweep_cmd) return cmd_sweep(family, grid, sweep_out, out, err);
        if (*demo_cmd) return cmd_demo_trit(l1, l3, out);
        if (*verify_cmd) return cmd_verify(suite, count, seed, out);
        if (*gen_cmd) return cmd_generate(gen_family, gl1, gl3, gen_seed, gen_out, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::InternalContradiction ? kExitViolation : kExitInputError;
    }
    return kExitInputError;
}

}  // namespace uebkit::cli
