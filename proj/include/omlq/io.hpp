#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "omlq/bridge.hpp"
#include "omlq/lattice.hpp"
#include "omlq/logic.hpp"
#include "omlq/suites.hpp"

namespace omlq::io {

inline constexpr const char* tool_name = "omlq";
inline constexpr const char* tool_version = "0.1.0";
inline constexpr int report_schema = 1;

struct CommandResult {
    int exit_code = 0;          // 0 ok, 2 validation failure, 3 cap exhausted
    nlohmann::json report;
};

// Lattice files: {"name": ..., "generator": "mo:2" | "boolean:3" |
// "projections:<relative path>"} or explicit {"elements": [names],
// "leq": [[a,b],...], "ortho": [[a,b],...]}.
struct NamedOml {
    std::string name;
    Oml oml;
};
NamedOml load_lattice_json(const nlohmann::json& j, const Caps& caps,
                           const std::string& base_dir);
NamedOml load_lattice_file(const std::string& path, const Caps& caps);

// Matrix entries: {"name", "dim", "entries": [fraction strings, row-major]}
// or {"name", "dim", "spectral": [{"value": q, "basis": [[rows]]}, ...]}.
struct NamedMatrix {
    std::string name;
    RationalMatrix matrix;
    std::vector<std::pair<Rational, Projection>> eigen; // always populated
};
NamedMatrix load_matrix_json(const nlohmann::json& j);

nlohmann::json report_header(const std::string& command, std::uint64_t seed,
                             const Caps& caps);
// Canonical serialization used everywhere a report leaves the process.
std::string dump_report(const nlohmann::json& report);
std::string render_text(const nlohmann::json& report);

CommandResult cmd_lattice_check(const std::string& path, const Caps& caps = {});
CommandResult cmd_theorems(const std::string& path, const std::string& which,
                           const Caps& caps = {});
CommandResult cmd_logic(const std::string& path, const std::string& profile,
                        const std::string& mode, std::uint64_t seed,
                        const Caps& caps = {});
// Re-evaluates every counterexample stored in a previous logic report.
CommandResult cmd_logic_replay(const std::string& lattice_path,
                               const std::string& report_path,
                               const Caps& caps = {});
CommandResult cmd_bridge(const std::string& path, const Caps& caps = {});

} // namespace omlq::io
