#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "uebkit/cli.hpp"
#include "uebkit/discrimination.hpp"
#include "uebkit/ensemble_io.hpp"
#include "uebkit/error.hpp"
#include "uebkit/ueb.hpp"

using namespace uebkit;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(UEBKIT_FIXTURES) + "/" + name; }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "uebkit-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string last_line(const std::string& text) {
    std::string t = text;
    while (!t.empty() && t.back() == '\n') {
        t.pop_back();
    }
    return t.substr(t.rfind('\n') + 1);
}

}  // namespace

TEST_SUITE("ensemble_io") {

TEST_CASE("parse a document with labels, tolerances and meta") {
    const EnsembleDocument doc = parse_ensemble(R"({
        "states": [[[1,0],[0,0],[0,0],[0,0]], [[0,0],[0,1],[0,0],[0,0]]],
        "labels": ["a", "b"],
        "tolerances": {"orth": 1e-6, "overlap": 1e-5},
        "meta": {"note": "x"}
    })");
    REQUIRE(doc.states.size() == 2);
    CHECK(doc.states[1][1] == cplx{0, 1});
    CHECK(doc.labels == std::vector<std::string>{"a", "b"});
    CHECK(doc.tolerances.orth == 1e-6);
    CHECK(doc.tolerances.overlap == 1e-5);
    CHECK(doc.tolerances.zero == kDefaultTolerances.zero);
    CHECK(doc.meta["note"] == "x");
    CHECK(to_orthogonal_set(doc).size() == 2);
}

TEST_CASE("parse errors carry a location") {
    const auto message = [](std::string_view text) {
        try {
            parse_ensemble(text);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(R"({"states": [[[1,0],[0,0],[0,0]]]})").find("states[0]") != std::string::npos);
    CHECK(message(R"({"states": [[[1,0],[0,0],[0,0],[0,"x"]]]})").find("states[0][3][1]") != std::string::npos);
    CHECK(message("{\n\"states\": [\n,]}").find("line 3") != std::string::npos);
    CHECK(message(R"({"labels": []})").find("states") != std::string::npos);
    CHECK(message(R"({"states": [], "tolerances": {"orth": -1}})").find("tolerances.orth") != std::string::npos);
    CHECK(message(R"({"states": [], "tolerances": {"bogus": 1}})").find("tolerances.bogus") != std::string::npos);
}

TEST_CASE("zero amplitude vector names its index") {
    const EnsembleDocument doc = parse_ensemble(R"({"states": [[[1,0],[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[0,0]]]})");
    try {
        to_orthogonal_set(doc);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("states[1]") != std::string::npos);
    }
}

TEST_CASE("document round trip") {
    const OrthogonalSet set = generate_eq1({0.3, 0.4});
    const nlohmann::json j = ensemble_json(set, {"x", "y", "z"}, {{"k", 1}});
    const OrthogonalSet back = to_orthogonal_set(parse_ensemble(j.dump()));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back[i].amplitudes() == set[i].amplitudes());
    }
}

TEST_CASE("number formatting is locale independent and 12 digits") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(0.0) == "0");
}

TEST_CASE("sweep CSV round trip") {
    const std::vector<SweepRecord> rows{
        {.lambda1 = 0.1, .lambda3 = 0.2, .cls = "OneUnidentifiable", .unidentifiable = {0}, .avg_entanglement = 0.5, .is_ueb = true},
        {.lambda1 = 0.3, .lambda3 = std::nullopt, .cls = "TwoUnidentifiable", .unidentifiable = {1, 2}, .avg_entanglement = 0.25, .is_ueb = false},
        {.lambda1 = 0.5, .lambda3 = std::nullopt, .cls = "ConclusiveOnly", .unidentifiable = {}, .avg_entanglement = 1.0, .is_ueb = false},
    };
    std::stringstream ss;
    write_sweep_csv(ss, rows);
    CHECK(ss.str().rfind(std::string(kSweepHeader) + "\n", 0) == 0);
    const std::vector<SweepRecord> back = read_sweep_csv(ss);
    REQUIRE(back.size() == rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(back[k].lambda1 == rows[k].lambda1);
        CHECK(back[k].lambda3 == rows[k].lambda3);
        CHECK(back[k].cls == rows[k].cls);
        CHECK(back[k].unidentifiable == rows[k].unidentifiable);
        CHECK(back[k].avg_entanglement == rows[k].avg_entanglement);
        CHECK(back[k].is_ueb == rows[k].is_ueb);
    }
    std::stringstream bad("wrong,header\n");
    CHECK_THROWS_AS(read_sweep_csv(bad), Error);
}

}

TEST_SUITE("cli") {

TEST_CASE("classify the UEB fixture") {
    const Run r = run({"classify", fixture("eq1.json")});
    CHECK(r.code == cli::kExitOk);
    CHECK(last_line(r.out) == "summary: OneUnidentifiable; unidentifiable: state 0; UEB: yes");
    CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("classify the Bell basis fixture") {
    const Run r = run({"classify", fixture("bell_basis.json")});
    CHECK(r.code == cli::kExitOk);
    CHECK(last_line(r.out) == "summary: CompleteBasis(4); conclusively distinguishable: no");
}

TEST_CASE("classify writes a machine-readable report") {
    const fs::path out = scratch("eq2-report.json");
    const Run r = run({"classify", fixture("eq2.json"), "--out", out.string()});
    REQUIRE(r.code == cli::kExitOk);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    CHECK(j["class"] == "TwoUnidentifiable");
    CHECK(j["unidentifiable"] == nlohmann::json::array({1, 2}));
    CHECK(j["states"][0]["witness"]["amplitudes"].size() == 4);
    CHECK(j["states"][1]["witness"].is_null());
    CHECK(j["ueb"]["is_ueb"] == false);
    CHECK(j["ueb"]["reason"] == "NotAllEntangled");
}

TEST_CASE("input errors exit 2") {
    const Run bad = run({"classify", fixture("malformed_amplitude.json")});
    CHECK(bad.code == cli::kExitInputError);
    CHECK(bad.err.find("states[1][3][0]") != std::string::npos);

    const Run nonorth = run({"classify", fixture("not_orthogonal.json")});
    CHECK(nonorth.code == cli::kExitInputError);
    CHECK(nonorth.err.find("states 0 and 1") != std::string::npos);
    CHECK(nonorth.err.find("0.6") != std::string::npos);

    const Run trunc = run({"classify", fixture("truncated.json")});
    CHECK(trunc.code == cli::kExitInputError);
    CHECK(trunc.err.find("line") != std::string::npos);

    CHECK(run({"classify", fixture("does_not_exist.json")}).code == cli::kExitInputError);
    CHECK(run({"frobnicate"}).code == cli::kExitInputError);
    CHECK(run({}).code == cli::kExitInputError);
}

TEST_CASE("tolerance override admits a nearly orthogonal pair") {
    const fs::path doc = scratch("near.json");
    std::ofstream(doc) << R"({"states": [[[1,0],[0,0],[0,0],[1e-8,0]], [[0,0],[0,0],[0,0],[1,0]]]})";
    CHECK(run({"classify", doc.string()}).code == cli::kExitInputError);
    CHECK(run({"classify", doc.string(), "--tolerance", "1e-6"}).code == cli::kExitOk);
}

TEST_CASE("sweep eq1 5x5") {
    const fs::path out = scratch("eq1.csv");
    const Run r = run({"sweep", "--family", "eq1", "--grid", "0.1,0.9,5", "--out", out.string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("uniform") != std::string::npos);
    std::ifstream in(out);
    const std::vector<SweepRecord> rows = read_sweep_csv(in);
    REQUIRE(rows.size() == 25);
    for (const SweepRecord& row : rows) {
        CHECK(row.cls == "OneUnidentifiable");
        CHECK(row.is_ueb);
    }
    CHECK(rows[1].lambda1 == doctest::Approx(0.1));
    CHECK(*rows[1].lambda3 == doctest::Approx(0.3));
}

TEST_CASE("sweep eq2 5 points, stdout") {
    const Run r = run({"sweep", "--family", "eq2", "--grid", "0.1,0.9,5"});
    CHECK(r.code == cli::kExitOk);
    std::istringstream in(r.out);
    const std::vector<SweepRecord> rows = read_sweep_csv(in);
    REQUIRE(rows.size() == 5);
    for (const SweepRecord& row : rows) {
        CHECK(row.cls == "TwoUnidentifiable");
        CHECK_FALSE(row.lambda3);
    }
}

TEST_CASE("sweep output is byte stable") {
    const Run a = run({"sweep", "--family", "eq1", "--grid", "0.05,0.95,7"});
    const Run b = run({"sweep", "--family", "eq1", "--grid", "0.05,0.95,7"});
    CHECK(a.out == b.out);
    CHECK(a.out.find('\r') == std::string::npos);
}

TEST_CASE("sweep bound errors") {
    CHECK(run({"sweep", "--grid", "0,0.9,5"}).code == cli::kExitInputError);
    CHECK(run({"sweep", "--grid", "0.1,1.0,5"}).code == cli::kExitInputError);
    CHECK(run({"sweep", "--grid", "0.1,0.9,1"}).code == cli::kExitInputError);
    CHECK(run({"sweep", "--grid", "0.1,0.9"}).code == cli::kExitInputError);
    CHECK(run({"sweep", "--family", "eq3"}).code == cli::kExitInputError);
}

TEST_CASE("demo trit") {
    const Run r = run({"demo-trit", "--lambda1", "0.3", "--lambda3", "0.4"});
    CHECK(r.code == cli::kExitOk);
    CHECK(last_line(r.out) == "summary: trit 0: protected; trit 1: recoverable; trit 2: recoverable");
    CHECK(r.out.find("warning") == std::string::npos);

    const Run half = run({"demo-trit", "--lambda1", "0.5", "--lambda3", "0.5"});
    CHECK(half.code == cli::kExitOk);
    CHECK(last_line(half.out) == "summary: trit 0: protected; trit 1: recoverable; trit 2: recoverable");
    CHECK(half.out.find("warning") != std::string::npos);

    const Run bad = run({"demo-trit", "--lambda1", "1.2"});
    CHECK(bad.code == cli::kExitInputError);
    CHECK(bad.err.find("BadParam") != std::string::npos);
}

TEST_CASE("verify suites") {
    const Run p1 = run({"verify", "--suite", "prop1", "--count", "100"});
    CHECK(p1.code == cli::kExitOk);
    CHECK(p1.out.find("PASS prop1: 100/100") != std::string::npos);
    const Run f2 = run({"verify", "--suite", "footnote2", "--count", "1000"});
    CHECK(f2.code == cli::kExitOk);
    CHECK(f2.out.find("exactly one entangled member = 0") != std::string::npos);
    CHECK(run({"verify", "--suite", "nope"}).code == cli::kExitInputError);
}

TEST_CASE("generate then classify reproduces the declared class") {
    const std::vector<std::vector<std::string>> cases{
        {"--family", "eq1", "--lambda1", "0.2", "--lambda3", "0.7"},
        {"--family", "eq2", "--lambda1", "0.35"},
        {"--family", "bell-triple"},
        {"--family", "bell-basis"},
        {"--family", "random-met", "--seed", "99"},
    };
    int k = 0;
    for (const auto& flags : cases) {
        const fs::path doc = scratch("gen" + std::to_string(k++) + ".json");
        std::vector<std::string> args{"generate"};
        args.insert(args.end(), flags.begin(), flags.end());
        args.insert(args.end(), {"--out", doc.string()});
        REQUIRE(run(args).code == cli::kExitOk);
        const nlohmann::json j = nlohmann::json::parse(slurp(doc));
        const fs::path report = scratch("gen-report.json");
        REQUIRE(run({"classify", doc.string(), "--out", report.string()}).code == cli::kExitOk);
        CAPTURE(flags[1]);
        CHECK(nlohmann::json::parse(slurp(report))["class"] == j["meta"]["declared_class"]);
    }
    CHECK(run({"generate", "--family", "nope"}).code == cli::kExitInputError);
}

TEST_CASE("generate is deterministic for a seed") {
    CHECK(run({"generate", "--family", "random-met", "--seed", "5"}).out ==
          run({"generate", "--family", "random-met", "--seed", "5"}).out);
    CHECK(run({"generate", "--family", "random-met", "--seed", "5"}).out !=
          run({"generate", "--family", "random-met", "--seed", "6"}).out);
}

}
