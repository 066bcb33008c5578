#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "omlq/io.hpp"

using namespace omlq;
using nlohmann::json;

namespace {

const std::string fixtures = FIXTURE_DIR;

std::string fx(const std::string& name) { return fixtures + "/" + name; }

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << body;
    return path;
}

// reports of the same run differ only in the timestamp header
json scrubbed(json j) {
    j.erase("generated_at");
    return j;
}

} // namespace

TEST_CASE("lattice loading from generators and explicit tables") {
    Caps caps;
    io::NamedOml mo2 = io::load_lattice_file(fx("mo2.json"), caps);
    CHECK(mo2.oml.size() == 6);
    io::NamedOml b3 = io::load_lattice_file(fx("boolean3.json"), caps);
    CHECK(b3.oml.size() == 8);
    io::NamedOml q2 = io::load_lattice_file(fx("q2_mo2.json"), caps);
    CHECK(q2.oml.size() == 6); // projections generator

    std::string path = write_temp("io_square.json", R"({
        "name": "square",
        "elements": ["0", "x", "y", "1"],
        "leq": [["0","x"], ["0","y"], ["x","1"], ["y","1"]],
        "ortho": [["x","y"]]
    })");
    io::NamedOml sq = io::load_lattice_file(path, caps);
    CHECK(sq.oml.size() == 4);
    CHECK(sq.oml.ortho(*sq.oml.index_of("x")) == *sq.oml.index_of("y"));
    std::remove(path.c_str());

    CHECK_THROWS_AS(io::load_lattice_file("/tmp/omlq_no_such_file.json", caps),
                    ParseError);
    std::string bad = write_temp("io_bad_gen.json",
                                 R"({"name": "bad", "generator": "cube:3"})");
    CHECK_THROWS_AS(io::load_lattice_file(bad, caps), ParseError);
    std::remove(bad.c_str());
}

TEST_CASE("matrix loading accepts entries and spectral forms") {
    json entries = {{"name", "A"},
                    {"dim", 2},
                    {"entries", {"1", "0", "0", "2"}}};
    io::NamedMatrix a = io::load_matrix_json(entries);
    CHECK(a.eigen.size() == 2);
    CHECK(a.eigen[0].first == 1);

    json spectral = {{"name", "A2"}, {"dim", 2}};
    spectral["spectral"] = json::array(
        {{{"value", "1"}, {"basis", json::array({json::array({"1", "0"})})}},
         {{"value", "2"}, {"basis", json::array({json::array({"0", "1"})})}}});
    io::NamedMatrix a2 = io::load_matrix_json(spectral);
    CHECK(a2.matrix == a.matrix);
    CHECK(a2.eigen == a.eigen);

    // spectral parts must resolve the identity
    json gap = spectral;
    gap["spectral"][1]["basis"] = json::array({json::array({"1", "1"})});
    CHECK_THROWS_AS(io::load_matrix_json(gap), ValidationError);
}

TEST_CASE("lattice-check reports structure or a typed error") {
    io::CommandResult ok = io::cmd_lattice_check(fx("mo2.json"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.report["result"]["elements"] == 6);
    CHECK(ok.report["result"]["subalgebras"] == 3);
    CHECK(ok.report["result"]["fiber_sizes"] == json({1, 2, 2}));

    io::CommandResult bad = io::cmd_lattice_check(fx("o6.json"));
    CHECK(bad.exit_code == 2);
    CHECK(bad.report["error"]["type"] == "NotOrthomodular");

    Caps tight;
    tight.max_lattice_size = 4;
    io::CommandResult capped = io::cmd_lattice_check(fx("mo3.json"), tight);
    CHECK(capped.exit_code == 3);
    CHECK(capped.report["error"]["type"] == "SizeCapExceeded");
}

TEST_CASE("theorems command aggregates the suites") {
    io::CommandResult all = io::cmd_theorems(fx("mo2.json"), "all");
    CHECK(all.exit_code == 0);
    CHECK(all.report["result"]["suites"].size() == 7);
    CHECK(all.report["result"]["ok"] == true);
    for (const json& s : all.report["result"]["suites"])
        CHECK(s["ok"] == true);

    io::CommandResult one = io::cmd_theorems(fx("boolean2.json"), "4.2");
    CHECK(one.exit_code == 0);
    CHECK(one.report["result"]["suites"].size() == 1);

    io::CommandResult unknown = io::cmd_theorems(fx("mo2.json"), "9.9");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("logic command and counterexample replay") {
    io::CommandResult run =
        io::cmd_logic(fx("mo2.json"), "star", "exhaustive", 1);
    CHECK(run.exit_code == 0);
    CHECK(run.report["result"]["axioms"].size() == 11);
    CHECK(run.report["result"]["rules"].size() == 6);

    int invalid = 0;
    for (const json& a : run.report["result"]["axioms"])
        if (a["status"] == "counterexample")
            ++invalid;
    CHECK(invalid == 1);

    // heyting profile refutes the paraconsistent law
    io::CommandResult hey = io::cmd_logic(fx("mo2.json"), "heyting", "auto", 1);
    bool a8_refuted = false;
    for (const json& a : hey.report["result"]["axioms"])
        if (a["id"] == "axiom 8" && a["status"] == "counterexample")
            a8_refuted = true;
    CHECK(a8_refuted);

    // every stored counterexample replays against a fresh evaluation
    std::string rep = write_temp("io_logic_report.json", io::dump_report(run.report));
    io::CommandResult replay = io::cmd_logic_replay(fx("mo2.json"), rep);
    CHECK(replay.exit_code == 0);
    CHECK(replay.report["result"]["replayed"] == 2);
    CHECK(replay.report["result"]["all_reproduced"] == true);
    for (const json& c : replay.report["result"]["entries"])
        CHECK(c["reproduced"] == true);

    // a tampered counterexample is rejected
    json tampered = run.report;
    for (json& a : tampered["result"]["axioms"])
        if (a["status"] == "counterexample")
            a["counterexample"]["value"] = {1, 3, 3};
    std::string bad = write_temp("io_logic_tampered.json", io::dump_report(tampered));
    io::CommandResult reject = io::cmd_logic_replay(fx("mo2.json"), bad);
    CHECK(reject.exit_code == 2);
    std::remove(rep.c_str());
    std::remove(bad.c_str());

    CHECK(io::cmd_logic(fx("mo2.json"), "star", "sideways", 1).exit_code == 2);
}

TEST_CASE("bridge command runs the experiment files") {
    io::CommandResult run = io::cmd_bridge(fx("exp_diag12_diag13.json"));
    CHECK(run.exit_code == 0);
    for (const json& m : run.report["result"]["matrices"]) {
        CHECK(m["dedekind"]["is_dedekind"] == true);
        CHECK(m["roundtrip"]["ok"] == true);
        CHECK(m["family"]["ok"] == true);
    }
    REQUIRE(run.report["result"]["injectivity"].size() == 2); // star + contrast
    CHECK(run.report["result"]["injectivity"][0]["distinguishing_q"] == "5/2");

    io::CommandResult bad = io::cmd_bridge(fx("exp_bad_grid.json"));
    CHECK(bad.exit_code == 2);
    CHECK(bad.report["error"]["type"] == "GridDoesNotBracketSpectrum");
}

TEST_CASE("reports are deterministic up to the timestamp") {
    io::CommandResult a = io::cmd_logic(fx("mo2.json"), "star", "sampled", 42);
    io::CommandResult b = io::cmd_logic(fx("mo2.json"), "star", "sampled", 42);
    CHECK(io::dump_report(scrubbed(a.report)) == io::dump_report(scrubbed(b.report)));

    io::CommandResult c = io::cmd_bridge(fx("exp_roundtrip.json"));
    io::CommandResult d = io::cmd_bridge(fx("exp_roundtrip.json"));
    CHECK(io::dump_report(scrubbed(c.report)) == io::dump_report(scrubbed(d.report)));
}

TEST_CASE("text rendering covers every command") {
    for (io::CommandResult res :
         {io::cmd_lattice_check(fx("mo2.json")),
          io::cmd_theorems(fx("mo2.json"), "2.3"),
          io::cmd_logic(fx("boolean2.json"), "star", "auto", 1),
          io::cmd_bridge(fx("exp_single.json")),
          io::cmd_lattice_check(fx("o6.json"))}) {
        std::string text = io::render_text(res.report);
        CHECK_FALSE(text.empty());
    }
}
