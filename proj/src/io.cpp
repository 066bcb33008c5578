#include "omlq/io.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace omlq::io {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

std::string error_type(const ValidationError& e) {
    if (dynamic_cast<const NotAPoset*>(&e)) return "NotAPoset";
    if (dynamic_cast<const NotALattice*>(&e)) return "NotALattice";
    if (dynamic_cast<const OrthoLawViolation*>(&e)) return "OrthoLawViolation";
    if (dynamic_cast<const NotOrthomodular*>(&e)) return "NotOrthomodular";
    if (dynamic_cast<const ElementNotInSubalgebra*>(&e)) return "ElementNotInSubalgebra";
    if (dynamic_cast<const NotHermitian*>(&e)) return "NotHermitian";
    if (dynamic_cast<const IrrationalSpectrum*>(&e)) return "IrrationalSpectrum";
    if (dynamic_cast<const GridDoesNotBracketSpectrum*>(&e)) return "GridDoesNotBracketSpectrum";
    if (dynamic_cast<const ProjectionNotInContext*>(&e)) return "ProjectionNotInContext";
    if (dynamic_cast<const GridMismatch*>(&e)) return "GridMismatch";
    if (dynamic_cast<const ContextMismatch*>(&e)) return "ContextMismatch";
    if (dynamic_cast<const OffGridRational*>(&e)) return "OffGridRational";
    if (dynamic_cast<const LambdaAboveGrid*>(&e)) return "LambdaAboveGrid";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    return "ValidationError";
}

// Runs the command body, converting exceptions to the exit-code contract.
template <typename Fn>
CommandResult guarded(const std::string& command, std::uint64_t seed,
                      const Caps& caps, Fn&& body) {
    CommandResult out;
    out.report = report_header(command, seed, caps);
    try {
        out.exit_code = body(out.report);
    } catch (const ValidationError& e) {
        out.report["error"] = {{"type", error_type(e)}, {"message", e.what()}};
        out.exit_code = 2;
    } catch (const SizeCapExceeded& e) {
        out.report["error"] = {{"type", "SizeCapExceeded"}, {"message", e.what()}};
        out.exit_code = 3;
    }
    return out;
}

std::vector<Rational> parse_rationals(const json& arr, const std::string& what) {
    if (!arr.is_array())
        throw ParseError(what + " must be an array of fraction strings");
    std::vector<Rational> out;
    for (const json& e : arr)
        out.push_back(parse_rational(e.get<std::string>()));
    return out;
}

json caps_json(const Caps& c) {
    return {{"max_lattice_size", c.max_lattice_size},
            {"max_subalgebras", c.max_subalgebras},
            {"max_subobject_combinations", c.max_subobject_combinations},
            {"max_generated_oml", c.max_generated_oml}};
}

json suite_json(const suites::SuiteResult& s) {
    return {{"id", s.id},
            {"ok", s.ok()},
            {"passed", s.passed},
            {"failures", s.failures}};
}

json counterexample_json(const logic::CounterexampleRecord& c) {
    json val = json::object();
    for (const auto& [var, parts] : c.valuation)
        val[var] = parts;
    return {{"formula", c.formula}, {"valuation", val}, {"value", c.value}};
}

json entry_json(const logic::CheckEntry& e) {
    json j = {{"id", e.id},
              {"description", e.description},
              {"status", logic::status_string(e.status)},
              {"checked", e.checked},
              {"mode", e.mode}};
    if (!e.note.empty())
        j["note"] = e.note;
    if (e.counterexample)
        j["counterexample"] = counterexample_json(*e.counterexample);
    return j;
}

logic::CounterexampleRecord counterexample_from_json(const json& j) {
    logic::CounterexampleRecord c;
    c.formula = j.at("formula").get<std::string>();
    for (const auto& [var, parts] : j.at("valuation").items())
        c.valuation[var] = parts.get<std::vector<std::uint64_t>>();
    c.value = j.at("value").get<std::vector<std::uint64_t>>();
    return c;
}

// Spectral input: eigenvalue/eigenspace pairs must form a resolution of the
// identity; this validates what eigendecompose would otherwise guarantee.
std::vector<std::pair<Rational, Projection>> parse_spectral(const json& arr, int dim) {
    std::vector<std::pair<Rational, Projection>> eigen;
    for (const json& e : arr) {
        Rational value = parse_rational(e.at("value").get<std::string>());
        std::vector<Vec> rows;
        for (const json& row : e.at("basis"))
            rows.push_back(parse_rationals(row, "basis row"));
        eigen.emplace_back(value, Projection::from_basis(dim, rows));
    }
    std::sort(eigen.begin(), eigen.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i + 1 < eigen.size(); ++i)
        if (eigen[i].first == eigen[i + 1].first)
            throw ValidationError("duplicate eigenvalue " +
                                  rational_string(eigen[i].first));
    RationalMatrix sum(dim);
    for (const auto& [v, p] : eigen) {
        (void)v;
        sum = sum + p.matrix();
    }
    if (!(sum == RationalMatrix::identity(dim)))
        throw ValidationError("spectral projections do not sum to the identity");
    for (size_t i = 0; i < eigen.size(); ++i)
        for (size_t j = i + 1; j < eigen.size(); ++j)
            if (!(proj_meet(eigen[i].second, eigen[j].second).rank() == 0))
                throw ValidationError("spectral projections are not orthogonal");
    return eigen;
}

} // namespace

NamedMatrix load_matrix_json(const json& j) {
    NamedMatrix m{j.value("name", "A"), RationalMatrix(0), {}};
    const int dim = j.at("dim").get<int>();
    if (dim <= 0)
        throw ParseError("matrix dimension must be positive");
    if (j.contains("entries")) {
        std::vector<Rational> entries = parse_rationals(j.at("entries"), "entries");
        if (static_cast<int>(entries.size()) != dim * dim)
            throw ParseError("matrix " + m.name + " needs " +
                             std::to_string(dim * dim) + " entries");
        RationalMatrix a(dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                a.at(r, c) = entries[static_cast<size_t>(r) * dim + c];
        m.matrix = a;
        m.eigen = eigendecompose(a);
    } else if (j.contains("spectral")) {
        m.eigen = parse_spectral(j.at("spectral"), dim);
        RationalMatrix a(dim);
        for (const auto& [value, p] : m.eigen)
            a = a + p.matrix().scaled(value);
        m.matrix = a;
    } else {
        throw ParseError("matrix " + m.name + " needs 'entries' or 'spectral'");
    }
    return m;
}

NamedOml load_lattice_json(const json& j, const Caps& caps,
                           const std::string& base_dir) {
    NamedOml out{j.value("name", "lattice"), make_boolean(1)};
    if (j.contains("generator")) {
        const std::string gen = j.at("generator").get<std::string>();
        const auto colon = gen.find(':');
        const std::string kind = gen.substr(0, colon);
        const std::string arg =
            colon == std::string::npos ? "" : gen.substr(colon + 1);
        if (kind == "boolean") {
            out.oml = make_boolean(std::stoi(arg));
        } else if (kind == "mo") {
            out.oml = make_mo(std::stoi(arg), caps);
        } else if (kind == "projections") {
            std::filesystem::path p(arg);
            if (p.is_relative())
                p = std::filesystem::path(base_dir) / p;
            json mj = read_json_file(p.string());
            std::vector<Projection> gens;
            for (const json& mat : mj.at("matrices")) {
                NamedMatrix nm = load_matrix_json(mat);
                for (const auto& [v, proj] : nm.eigen) {
                    (void)v;
                    gens.push_back(proj);
                }
            }
            out.oml = generate_oml(gens, caps).oml;
        } else {
            throw ParseError("unknown generator '" + gen + "'");
        }
        return out;
    }
    LatticeSpec spec;
    spec.elements = j.at("elements").get<std::vector<std::string>>();
    for (const json& p : j.at("leq"))
        spec.leq.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    if (j.contains("ortho"))
        for (const json& p : j.at("ortho"))
            spec.ortho.emplace_back(p.at(0).get<std::string>(),
                                    p.at(1).get<std::string>());
    out.oml = build_lattice(spec, caps);
    return out;
}

NamedOml load_lattice_file(const std::string& path, const Caps& caps) {
    return load_lattice_json(read_json_file(path), caps,
                             std::filesystem::path(path).parent_path().string());
}

json report_header(const std::string& command, std::uint64_t seed,
                   const Caps& caps) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&t));
    return {{"tool", tool_name},       {"version", tool_version},
            {"schema", report_schema}, {"command", command},
            {"seed", seed},            {"caps", caps_json(caps)},
            {"generated_at", stamp}};
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

CommandResult cmd_lattice_check(const std::string& path, const Caps& caps) {
    return guarded("lattice-check", 0, caps, [&](json& report) {
        NamedOml in = load_lattice_file(path, caps);
        report["input"] = {{"file", path}, {"lattice", in.name}};
        SubalgebraPoset poset = enumerate_boolean_subalgebras(in.oml, caps);
        json fibers = json::array();
        for (const BooleanSubalgebra& B : poset.members)
            fibers.push_back(static_cast<int>(atoms_of(in.oml, B).size()));
        json names = json::array();
        for (Elem a = 0; a < in.oml.size(); ++a)
            names.push_back(in.oml.name(a));
        report["result"] = {{"valid", true},
                            {"elements", in.oml.size()},
                            {"element_names", names},
                            {"subalgebras", static_cast<int>(poset.members.size())},
                            {"fiber_sizes", fibers}};
        return 0;
    });
}

CommandResult cmd_theorems(const std::string& path, const std::string& which,
                           const Caps& caps) {
    return guarded("theorems", 0, caps, [&](json& report) {
        NamedOml in = load_lattice_file(path, caps);
        report["input"] = {{"file", path}, {"lattice", in.name}, {"which", which}};
        SpectralPresheaf P = SpectralPresheaf::build(in.oml, caps);
        EQuotient E(P);
        std::vector<suites::SuiteResult> results = suites::run_suites(E, which);
        json arr = json::array();
        bool all_ok = true;
        for (const suites::SuiteResult& s : results) {
            arr.push_back(suite_json(s));
            all_ok = all_ok && s.ok();
        }
        report["result"] = {{"suites", arr}, {"ok", all_ok}};
        return all_ok ? 0 : 2;
    });
}

CommandResult cmd_logic(const std::string& path, const std::string& profile,
                        const std::string& mode, std::uint64_t seed,
                        const Caps& caps) {
    return guarded("logic", seed, caps, [&](json& report) {
        NamedOml in = load_lattice_file(path, caps);
        logic::SemanticsProfile prof = logic::SemanticsProfile::from_name(profile);
        logic::CheckBudget budget;
        budget.seed = seed;
        if (mode == "exhaustive")
            budget.max_valuations = 1LL << 62;
        else if (mode == "sampled")
            budget.max_valuations = 50000;
        else if (mode != "auto")
            throw ParseError("unknown mode '" + mode +
                             "' (expected exhaustive, auto or sampled)");
        report["input"] = {{"file", path},
                           {"lattice", in.name},
                           {"profile", profile},
                           {"mode", mode}};
        SpectralPresheaf P = SpectralPresheaf::build(in.oml, caps);
        logic::ValidationReport r = logic::full_logic_report(P, prof, budget, in.name);
        json axioms = json::array(), rules = json::array();
        bool all_axioms = true;
        for (const logic::CheckEntry& e : r.axioms) {
            axioms.push_back(entry_json(e));
            all_axioms = all_axioms && e.status == logic::Status::valid;
        }
        for (const logic::CheckEntry& e : r.rules)
            rules.push_back(entry_json(e));
        report["result"] = {{"axioms", axioms},
                            {"rules", rules},
                            {"all_axioms_valid", all_axioms}};
        return 0;
    });
}

CommandResult cmd_logic_replay(const std::string& lattice_path,
                               const std::string& report_path, const Caps& caps) {
    return guarded("logic-replay", 0, caps, [&](json& report) {
        json prev = read_json_file(report_path);
        NamedOml in = load_lattice_file(lattice_path, caps);
        const std::string profile_name =
            prev.at("input").at("profile").get<std::string>();
        logic::SemanticsProfile prof =
            logic::SemanticsProfile::from_name(profile_name);
        report["input"] = {{"file", lattice_path},
                           {"lattice", in.name},
                           {"report", report_path},
                           {"profile", profile_name}};
        SpectralPresheaf P = SpectralPresheaf::build(in.oml, caps);
        std::vector<ClopenSubobject> subs = enumerate_subobjects(P);
        json entries = json::array();
        bool all_ok = true;
        for (const char* section : {"axioms", "rules"})
            for (const json& e : prev.at("result").at(section)) {
                if (!e.contains("counterexample"))
                    continue;
                logic::CounterexampleRecord c =
                    counterexample_from_json(e.at("counterexample"));
                bool ok = logic::replay_counterexample(P, prof, c, subs);
                all_ok = all_ok && ok;
                entries.push_back({{"id", e.at("id")},
                                   {"formula", c.formula},
                                   {"reproduced", ok}});
            }
        report["result"] = {{"replayed", entries.size()},
                            {"entries", entries},
                            {"all_reproduced", all_ok}};
        return all_ok ? 0 : 2;
    });
}

namespace {

json dedekind_json(const DedekindReport& d) {
    json j = {{"monotone", d.monotone},
              {"bottom_is_bottom", d.bottom_is_bottom},
              {"top_is_top", d.top_is_top},
              {"right_continuous", d.right_continuous},
              {"is_dedekind", d.is_dedekind()}};
    if (!d.witness.empty())
        j["witness"] = d.witness;
    return j;
}

json wrc_json(const WrcFamilyReport& w) {
    json j = {{"meet_is_zero", w.meet_is_zero},
              {"step_convention_ok", w.step_convention_ok},
              {"sup_is_one", w.sup_is_one}};
    if (!w.witness.empty())
        j["witness"] = w.witness;
    return j;
}

json injectivity_json(const std::string& a, const std::string& b,
                      const InjectivityReport& r) {
    json j = {{"a", a},
              {"b", b},
              {"profile", r.profile},
              {"equality_is_top", r.equality_is_top},
              {"g_families_differ", r.g_families_differ},
              {"operators_differ", r.operators_differ},
              {"grid_resolution_limit", r.grid_resolution_limit}};
    if (r.distinguishing_q)
        j["distinguishing_q"] = rational_string(*r.distinguishing_q);
    if (r.g_witness)
        j["g_witness"] = rational_string(*r.g_witness);
    return j;
}

// G(H(A)) at lambda must reproduce the grid meet of the sampled spectral
// family, elementwise in the context lattice.
json roundtrip_json(const NamedMatrix& m, const RealName& u,
                    const BridgeContext& ctx) {
    const Oml& L = ctx.gen.oml;
    ProjectionFamily fam = spectral_family(m.eigen);
    json entries = json::array();
    bool ok = true;
    for (size_t i = 0; i + 1 < u.grid.points.size(); ++i) {
        const Rational& lambda = u.grid.points[i];
        Elem lhs = epsilon(cut_to_E(u, lambda));
        Elem rhs = L.top();
        for (const Rational& q : u.grid.points)
            if (q > lambda)
                rhs = L.meet(rhs, *ctx.gen.find(fam.value_at(q)));
        ok = ok && lhs == rhs;
        entries.push_back({{"lambda", rational_string(lambda)},
                           {"lhs", L.name(lhs)},
                           {"rhs", L.name(rhs)},
                           {"equal", lhs == rhs}});
    }
    return {{"ok", ok}, {"entries", entries}};
}

} // namespace

CommandResult cmd_bridge(const std::string& path, const Caps& caps) {
    return guarded("bridge", 0, caps, [&](json& report) {
        json j = read_json_file(path);
        std::vector<NamedMatrix> matrices;
        for (const json& mj : j.at("matrices"))
            matrices.push_back(load_matrix_json(mj));
        if (matrices.empty())
            throw ParseError("experiment needs at least one matrix");
        RationalGrid grid = RationalGrid::make(parse_rationals(j.at("grid"), "grid"));
        const std::string profile_name = j.value("profile", "star");
        logic::SemanticsProfile prof =
            logic::SemanticsProfile::from_name(profile_name);
        std::vector<std::string> checks =
            j.contains("checks") ? j.at("checks").get<std::vector<std::string>>()
                                 : std::vector<std::string>{"family", "dedekind",
                                                            "roundtrip", "injectivity"};
        auto wants = [&](const std::string& c) {
            return std::find(checks.begin(), checks.end(), c) != checks.end();
        };

        // The context is generated by the eigenprojections of the listed
        // matrices (default: all of them).
        std::vector<std::string> context_names;
        if (j.contains("context"))
            context_names = j.at("context").get<std::vector<std::string>>();
        else
            for (const NamedMatrix& m : matrices)
                context_names.push_back(m.name);
        std::vector<Projection> generators;
        for (const std::string& n : context_names) {
            auto it = std::find_if(matrices.begin(), matrices.end(),
                                   [&](const NamedMatrix& m) { return m.name == n; });
            if (it == matrices.end())
                throw ParseError("context references unknown matrix '" + n + "'");
            for (const auto& [v, p] : it->eigen) {
                (void)v;
                generators.push_back(p);
            }
        }
        BridgeContext ctx = BridgeContext::build(generators, caps);

        report["input"] = {{"file", path},
                           {"experiment", j.value("name", "experiment")},
                           {"profile", profile_name},
                           {"checks", checks}};
        json grid_json = json::array();
        for (const Rational& q : grid.points)
            grid_json.push_back(rational_string(q));
        json result = {{"context",
                        {{"elements", ctx.gen.oml.size()},
                         {"subalgebras", ctx.presheaf->fiber_count()}}},
                       {"grid", grid_json}};

        json per_matrix = json::array();
        std::vector<RealName> names;
        for (const NamedMatrix& m : matrices) {
            json entry = {{"name", m.name}};
            RealName u = bridge_H(m.eigen, grid, ctx);
            if (wants("family"))
                entry["family"] = [&] {
                    FamilyReport f = verify_family(spectral_family(m.eigen));
                    json fj = {{"monotone", f.monotone},
                               {"bottom_is_zero", f.bottom_is_zero},
                               {"top_is_identity", f.top_is_identity},
                               {"left_continuous", f.left_continuous},
                               {"ok", f.all_ok()}};
                    if (!f.witness.empty())
                        fj["witness"] = f.witness;
                    return fj;
                }();
            if (wants("dedekind")) {
                entry["dedekind"] = dedekind_json(is_dedekind_real(u));
                entry["wrc_family"] = wrc_json(verify_wrc_family(to_operator_family_G(u)));
            }
            if (wants("roundtrip"))
                entry["roundtrip"] = roundtrip_json(m, u, ctx);
            per_matrix.push_back(entry);
            names.push_back(std::move(u));
        }
        result["matrices"] = per_matrix;

        if (wants("injectivity") && matrices.size() >= 2) {
            json inj = json::array();
            for (size_t a = 0; a < matrices.size(); ++a)
                for (size_t b = a + 1; b < matrices.size(); ++b) {
                    inj.push_back(injectivity_json(
                        matrices[a].name, matrices[b].name,
                        injectivity_experiment(matrices[a].matrix,
                                               matrices[b].matrix, grid, ctx, prof)));
                    // Contrast run: the same pair under the Heyting profile,
                    // so the profiles can be compared from one report.
                    if (profile_name != "heyting")
                        inj.push_back(injectivity_json(
                            matrices[a].name, matrices[b].name,
                            injectivity_experiment(matrices[a].matrix,
                                                   matrices[b].matrix, grid, ctx,
                                                   logic::SemanticsProfile::heyting())));
                }
            result["injectivity"] = inj;
        }
        report["result"] = result;
        return 0;
    });
}

namespace {

void render_suites(std::ostringstream& os, const json& result) {
    for (const json& s : result.at("suites")) {
        os << "[suite " << s.at("id").get<std::string>() << "] "
           << (s.at("ok").get<bool>() ? "PASS" : "FAIL") << "\n";
        for (const json& line : s.at("passed"))
            os << "  ok   " << line.get<std::string>() << "\n";
        for (const json& line : s.at("failures"))
            os << "  FAIL " << line.get<std::string>() << "\n";
    }
}

void render_logic(std::ostringstream& os, const json& result) {
    for (const char* section : {"axioms", "rules"})
        for (const json& e : result.at(section)) {
            os << e.at("id").get<std::string>() << ": "
               << e.at("status").get<std::string>() << " (checked "
               << e.at("checked").get<long long>() << ", "
               << e.at("mode").get<std::string>() << ")";
            if (e.contains("note"))
                os << " — " << e.at("note").get<std::string>();
            os << "\n";
            if (e.contains("counterexample"))
                os << "  counterexample: "
                   << e.at("counterexample").at("formula").get<std::string>()
                   << "\n";
        }
    os << "all axioms valid: "
       << (result.at("all_axioms_valid").get<bool>() ? "yes" : "no") << "\n";
}

void render_bridge(std::ostringstream& os, const json& result) {
    os << "context: " << result.at("context").at("elements").get<int>()
       << " elements, " << result.at("context").at("subalgebras").get<int>()
       << " subalgebras\n";
    for (const json& m : result.at("matrices")) {
        os << "matrix " << m.at("name").get<std::string>() << ":";
        if (m.contains("family"))
            os << " family " << (m.at("family").at("ok").get<bool>() ? "ok" : "FAIL");
        if (m.contains("dedekind")) {
            os << ", dedekind "
               << (m.at("dedekind").at("is_dedekind").get<bool>() ? "ok" : "FAIL");
            os << ", wrc sup_is_one="
               << (m.at("wrc_family").at("sup_is_one").get<bool>() ? "yes" : "no");
        }
        if (m.contains("roundtrip"))
            os << ", roundtrip "
               << (m.at("roundtrip").at("ok").get<bool>() ? "ok" : "FAIL");
        os << "\n";
    }
    if (result.contains("injectivity"))
        for (const json& e : result.at("injectivity")) {
            os << "injectivity " << e.at("a").get<std::string>() << " vs "
               << e.at("b").get<std::string>() << " ("
               << e.at("profile").get<std::string>() << "): "
               << (e.at("equality_is_top").get<bool>() ? "indistinguishable"
                                                       : "distinguished");
            if (e.contains("distinguishing_q"))
                os << " at q = " << e.at("distinguishing_q").get<std::string>();
            if (e.at("grid_resolution_limit").get<bool>())
                os << " [grid resolution limit]";
            os << "\n";
        }
}

} // namespace

std::string render_text(const json& report) {
    std::ostringstream os;
    const std::string command = report.at("command").get<std::string>();
    os << tool_name << " " << tool_version << " — " << command << "\n";
    if (report.contains("error")) {
        os << "error " << report.at("error").at("type").get<std::string>() << ": "
           << report.at("error").at("message").get<std::string>() << "\n";
        return os.str();
    }
    const json& result = report.at("result");
    if (command == "lattice-check") {
        os << "lattice " << report.at("input").at("lattice").get<std::string>()
           << ": " << result.at("elements").get<int>() << " elements, "
           << result.at("subalgebras").get<int>() << " Boolean subalgebras\n";
        os << "fiber sizes:";
        for (const json& f : result.at("fiber_sizes"))
            os << " " << f.get<int>();
        os << "\n";
    } else if (command == "theorems") {
        render_suites(os, result);
    } else if (command == "logic") {
        render_logic(os, result);
    } else if (command == "logic-replay") {
        os << "replayed " << result.at("replayed").get<int>()
           << " counterexamples, all reproduced: "
           << (result.at("all_reproduced").get<bool>() ? "yes" : "no") << "\n";
    } else if (command == "bridge") {
        render_bridge(os, result);
    }
    return os.str();
}

} // namespace omlq::io
