#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "omlq/io.hpp"

namespace {

struct CapFlags {
    omlq::Caps caps;
    void attach(CLI::App* cmd) {
        cmd->add_option("--max-lattice-size", caps.max_lattice_size,
                        "element cap for input lattices");
        cmd->add_option("--max-subalgebras", caps.max_subalgebras,
                        "cap on enumerated Boolean subalgebras");
        cmd->add_option("--max-subobject-combinations",
                        caps.max_subobject_combinations,
                        "cap on the subobject enumeration");
        cmd->add_option("--max-generated-oml", caps.max_generated_oml,
                        "cap on projection-generated lattices");
    }
};

int emit(const omlq::io::CommandResult& r, const std::string& json_out,
         bool json_only) {
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << omlq::io::dump_report(r.report);
    }
    if (json_only)
        std::cout << omlq::io::dump_report(r.report);
    else
        std::cout << omlq::io::render_text(r.report);
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for finite orthomodular lattices"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string file, which = "all", profile = "star", mode = "auto";
    std::string json_out, replay;
    bool json_only = false;
    std::uint64_t seed = 0;

    app.add_option("--out", json_out, "also write the JSON report to a file");
    app.add_flag("--json", json_only, "print the JSON report instead of text");

    CapFlags lattice_caps, theorem_caps, logic_caps, bridge_caps;

    CLI::App* check = app.add_subcommand(
        "lattice-check", "validate an OML file and enumerate its contexts");
    check->add_option("file", file, "lattice file")->required();
    lattice_caps.attach(check);

    CLI::App* theorems =
        app.add_subcommand("theorems", "run the verification suites");
    theorems->add_option("file", file, "lattice file")->required();
    theorems->add_option("--which", which,
                         "suite id: 2.3, 2.5, 2.6, 3.1, 3.2, 4.2 or all");
    theorem_caps.attach(theorems);

    CLI::App* logic =
        app.add_subcommand("logic", "check the axioms and rules on a lattice");
    logic->add_option("file", file, "lattice file")->required();
    logic->add_option("--profile", profile, "heyting, coheyting or star");
    logic->add_option("--mode", mode, "exhaustive, auto or sampled");
    logic->add_option("--seed", seed, "sampling seed");
    logic->add_option("--replay", replay,
                      "re-check the counterexamples of a previous report");
    logic_caps.attach(logic);

    CLI::App* bridge =
        app.add_subcommand("bridge", "run an operator-bridge experiment file");
    bridge->add_option("file", file, "experiment file")->required();
    bridge_caps.attach(bridge);

    CLI11_PARSE(app, argc, argv);

    omlq::io::CommandResult r;
    if (check->parsed())
        r = omlq::io::cmd_lattice_check(file, lattice_caps.caps);
    else if (theorems->parsed())
        r = omlq::io::cmd_theorems(file, which, theorem_caps.caps);
    else if (logic->parsed() && !replay.empty())
        r = omlq::io::cmd_logic_replay(file, replay, logic_caps.caps);
    else if (logic->parsed())
        r = omlq::io::cmd_logic(file, profile, mode, seed, logic_caps.caps);
    else
        r = omlq::io::cmd_bridge(file, bridge_caps.caps);
    return emit(r, json_out, json_only);
}
