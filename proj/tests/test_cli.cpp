#include "loghh/cli.hpp"

#include <doctest.h>

using namespace loghh;

namespace {

const char* kIndexTwo = R"({
  "declarations": {
    "monoids": {
      "P": {"ambient": 2, "generators": [[2, 0], [1, 1], [0, 2]]},
      "N2": {"free": 2}
    },
    "monoid_maps": {
      "incl": {"source": "P", "target": "N2", "matrix": [[1, 0], [0, 1]]}
    },
    "prelog_maps": {
      "f": {"canonical": "incl", "coefficients": "QQ"}
    }
  },
  "tasks": [
    {"op": "classify_map", "id": "classify", "args": {"map": "f"}},
    {"op": "is_integral", "id": "integral", "args": {"map": "incl"}},
    {"op": "graded_tor", "id": "tor", "args": {"map": "incl"}, "options": {"qmax": 1, "degree_box": 2}}
  ]
})";

RunResult run(const std::string& text, RunFlags flags = {}) { return run_tasks(parse_task_file(text), flags); }

const json& task(const RunResult& r, const std::string& id) {
    for (const auto& t : r.report["tasks"])
        if (t["id"] == id) return t;
    throw std::runtime_error("no task " + id);
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("empty task list") {
        RunResult r = run(R"({"tasks": []})");
        CHECK(r.exit_code == 0);
        CHECK(r.report["tasks"].empty());
        CHECK(run("{}").exit_code == 0);
    }

    TEST_CASE("parse errors carry line and column") {
        try {
            parse_task_file("{\n  \"tasks\": [\n    {\"op\": \"contains\",, }\n  ]\n}");
            FAIL("no error");
        } catch (const InputError& e) {
            const std::string w = e.what();
            CHECK(w.find("line 3") != std::string::npos);
            CHECK(w.find("column") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_task_file(R"({"tasks": [{"op": "no_such_op"}]})"), InputError);
        CHECK_THROWS_AS(parse_task_file(R"({"tasks": [{"op": "contains", "options": {"qmax": 99}}]})"), InputError);
        CHECK_THROWS_AS(parse_task_file(R"({"tasks": [{"op": "contains", "options": {"colour": 1}}]})"), InputError);
        CHECK_THROWS_AS(parse_task_file(R"({"declarations": {"widgets": {}}})"), InputError);
    }

    TEST_CASE("unresolved references are named") {
        try {
            parse_task_file(R"({"declarations": {"monoid_maps": {"m": {"source": "A", "target": "B", "matrix": []}}}})");
            FAIL("no error");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("'A'") != std::string::npos);
        }
        RunResult r = run(R"({"tasks": [{"op": "is_saturated", "id": "x", "args": {"monoid": "missing"}}]})");
        CHECK(r.exit_code == 2);
        CHECK(task(r, "x")["notes"][0].get<std::string>().find("missing") != std::string::npos);
    }

    TEST_CASE("index-2 monoid suite") {
        RunResult r = run(kIndexTwo);
        CHECK(task(r, "classify")["result"]["derived_log_etale"] == true);
        CHECK(task(r, "integral")["result"]["value"] == "No");
        CHECK(r.exit_code == 0);
        RunFlags f2;
        f2.only = "classify";
        RunResult sub = run(kIndexTwo, f2);
        CHECK(sub.report["tasks"].size() == 1);
    }

    TEST_CASE("residue task passes") {
        RunResult r = run(R"({"tasks": [{"op": "residue_check", "id": "r", "args": {"config": "affine", "nmax": 1}}]})");
        CHECK(task(r, "r")["verdict"] == "pass");
        CHECK(r.exit_code == 0);
    }

    TEST_CASE("exit codes") {
        CHECK(exit_code({Verdict::Pass, Verdict::Pass}, false, false) == 0);
        CHECK(exit_code({Verdict::Pass, Verdict::Fail, Verdict::Unknown}, false, false) == 1);
        CHECK(exit_code({Verdict::Pass, Verdict::Unknown}, false, false) == 3);
        CHECK(exit_code({Verdict::Unsupported}, false, true) == 0);
        CHECK(exit_code({Verdict::Pass}, true, true) == 2);
        RunResult unsupported = run(R"({"tasks": [{"op": "residue_check", "args": {"config": "affine", "exponent": 2}}]})");
        CHECK(unsupported.exit_code == 3);
        RunFlags allow;
        allow.allow_inconclusive = true;
        CHECK(run(R"({"tasks": [{"op": "residue_check", "args": {"config": "affine", "exponent": 2}}]})", allow).exit_code == 0);
    }

    TEST_CASE("window guard needs acknowledgement") {
        const std::string guarded = R"({"tasks": [{"op": "cech_totalize", "id": "t",
            "args": {"scheme": {"catalog": "P1"}}, "options": {"qmax": 1, "degree_box": 1}}]})";
        RunResult r = run(guarded);
        CHECK(task(r, "t")["verdict"] == "unknown");
        CHECK(r.exit_code == 3);
        const std::string ack = R"({"tasks": [{"op": "cech_totalize", "id": "t",
            "args": {"scheme": {"catalog": "P1"}}, "options": {"qmax": 1, "degree_box": 1, "acknowledge_window": true}}]})";
        CHECK(run(ack).exit_code == 0);
    }

    TEST_CASE("option precedence") {
        const std::string text = R"({"tasks": [
            {"op": "cyclic_bar_homology", "id": "a", "args": {"map": {"source": {"trivial": 0}, "target": {"free": 1}, "matrix": [[]]}}},
            {"op": "cyclic_bar_homology", "id": "b", "args": {"map": {"source": {"trivial": 0}, "target": {"free": 1}, "matrix": [[]]}},
             "options": {"qmax": 1}}]})";
        RunFlags f;
        f.qmax = 3;
        RunResult r = run(text, f);
        CHECK(task(r, "a")["provenance"]["qmax"] == 3);
        CHECK(task(r, "b")["provenance"]["qmax"] == 1);
        CHECK(task(run(text), "a")["provenance"]["qmax"] == kDefaultQmax);
    }

    TEST_CASE("reports re-parse and are deterministic") {
        RunResult a = run(kIndexTwo), b = run(kIndexTwo);
        CHECK(json::parse(a.report.dump()) == a.report);
        CHECK(a.report.dump() == b.report.dump());
        CHECK(a.report["seed"] == 1);
        RunFlags s;
        s.seed = 42;
        RunResult c = run(kIndexTwo, s);
        CHECK(c.report["seed"] == 42);
        CHECK(c.report["tasks"][0]["result"] == a.report["tasks"][0]["result"]);
        CHECK_FALSE(a.report["tasks"][0].contains("seconds"));
        RunFlags t;
        t.timing = true;
        CHECK(run(kIndexTwo, t).report["tasks"][0].contains("seconds"));
        CHECK(render_text(a).find("classify") != std::string::npos);
    }

    TEST_CASE("declared objects round-trip through serialization") {
        TaskFile f = parse_task_file(kIndexTwo);
        for (const auto& [name, M] : f.decl.monoids) CHECK(parse_monoid(serialize(M), f.decl) == M);
        for (const auto& [name, h] : f.decl.monoid_maps) {
            MonoidHom g = parse_monoid_map(serialize(h), f.decl);
            CHECK(g.matrix() == h.matrix());
            CHECK(g.source() == h.source());
            CHECK(g.target() == h.target());
        }
        for (const auto& [name, p] : f.decl.prelog_maps) {
            PreLogMap q = parse_prelog_map(serialize(p), f.decl);
            CHECK(serialize(q) == serialize(p));
        }
        const Declarations none;
        for (const auto& name : standard_scheme_names()) {
            GluedLogScheme X = standard_scheme(name, Coefficients::rationals());
            GluedLogScheme Y = parse_scheme(serialize(X), none);
            CHECK(serialize(Y) == serialize(X));
        }
        for (const char* name : {"P2", "blowup_P2", "affine_plane"}) {
            Fan f1 = Fan::named(name);
            CHECK(serialize(parse_fan(serialize(f1), none)) == serialize(f1));
        }
        PreLogRing A(Coefficients::prime_field(3), AffineMonoid::free_monoid(2), {{2, 0}}, AffineMonoid::free_monoid(1),
                     IntMatrix::from_rows({{1}, {0}}, 1));
        CHECK(serialize(parse_ring(serialize(A), none)) == serialize(A));
        CHECK(parse_coefficients("GF(5)") == Coefficients::prime_field(5));
        CHECK(parse_coefficients("QQ") == Coefficients::rationals());
        CHECK_THROWS_AS(parse_coefficients("GF(6)"), InputError);
    }

    TEST_CASE("acceptance subset") {
        RunFlags f;
        f.only = "HKR";
        RunResult r = acceptance(f);
        REQUIRE(r.report["criteria"].size() == 1);
        CHECK(r.report["criteria"][0]["key"] == "HKR");
        CHECK(r.report["criteria"][0]["verdict"] == "pass");
        CHECK(r.exit_code == 0);
        f.only = "1";
        CHECK(acceptance(f).report["criteria"][0]["key"] == "REPLETION");
    }
}
