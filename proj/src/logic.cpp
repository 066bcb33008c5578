#include "omlq/logic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>

#include "omlq/daseinisation.hpp"

namespace omlq::logic {

SemanticsProfile SemanticsProfile::heyting() {
    return {"heyting", Negation::heyting, Implication::heyting};
}
SemanticsProfile SemanticsProfile::coheyting() {
    return {"coheyting", Negation::coheyting, Implication::co};
}
SemanticsProfile SemanticsProfile::star() {
    return {"star", Negation::star, Implication::star};
}
SemanticsProfile SemanticsProfile::from_name(const std::string& name) {
    if (name == "heyting")
        return heyting();
    if (name == "coheyting" || name == "co")
        return coheyting();
    if (name == "star")
        return star();
    throw ParseError("unknown semantics profile '" + name + "'");
}

Formula Formula::v(std::string name) {
    Formula f;
    f.kind = Kind::Var;
    f.var = std::move(name);
    return f;
}
Formula Formula::land(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::And;
    f.children = {std::move(a), std::move(b)};
    return f;
}
Formula Formula::lor(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::Or;
    f.children = {std::move(a), std::move(b)};
    return f;
}
Formula Formula::lnot(Formula a) {
    Formula f;
    f.kind = Kind::Not;
    f.children = {std::move(a)};
    return f;
}
Formula Formula::implies(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::Implies;
    f.children = {std::move(a), std::move(b)};
    return f;
}
Formula Formula::forall(std::string bound, Formula body) {
    Formula f;
    f.kind = Kind::Forall;
    f.var = std::move(bound);
    f.children = {std::move(body)};
    return f;
}

std::string Formula::text() const {
    switch (kind) {
    case Kind::Var:
        return var;
    case Kind::And:
        return "(" + children[0].text() + " & " + children[1].text() + ")";
    case Kind::Or:
        return "(" + children[0].text() + " | " + children[1].text() + ")";
    case Kind::Not:
        return "~" + children[0].text();
    case Kind::Implies:
        return "(" + children[0].text() + " -> " + children[1].text() + ")";
    case Kind::Forall:
        return "(forall " + var + " . " + children[0].text() + ")";
    }
    return "?";
}

namespace {
void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
    if (f.kind == Formula::Kind::Var) {
        if (std::find(bound.begin(), bound.end(), f.var) == bound.end() &&
            std::find(out.begin(), out.end(), f.var) == out.end())
            out.push_back(f.var);
        return;
    }
    if (f.kind == Formula::Kind::Forall) {
        bound.push_back(f.var);
        collect_free(f.children[0], bound, out);
        bound.pop_back();
        return;
    }
    for (const Formula& c : f.children)
        collect_free(c, bound, out);
}
} // namespace

std::vector<std::string> Formula::free_variables() const {
    std::vector<std::string> bound, out;
    collect_free(*this, bound, out);
    return out;
}

// ---- parser -------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool eat(const std::string& tok) {
        skip();
        if (s.compare(i, tok.size(), tok) == 0) {
            i += tok.size();
            return true;
        }
        return false;
    }
    std::string ident() {
        skip();
        size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (start == i)
            throw ParseError("expected identifier at offset " + std::to_string(start) +
                             " in '" + s + "'");
        return s.substr(start, i - start);
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (eat("->"))
            return Formula::implies(std::move(lhs), parse_implies());
        return lhs;
    }
    Formula parse_or() {
        Formula f = parse_and();
        while (true) {
            skip();
            // don't swallow the first dash of "->"
            if (i < s.size() && s[i] == '|') {
                ++i;
                f = Formula::lor(std::move(f), parse_and());
            } else
                break;
        }
        return f;
    }
    Formula parse_and() {
        Formula f = parse_unary();
        while (eat("&"))
            f = Formula::land(std::move(f), parse_unary());
        return f;
    }
    Formula parse_unary() {
        skip();
        if (eat("~"))
            return Formula::lnot(parse_unary());
        if (eat("(")) {
            Formula f = parse_implies();
            if (!eat(")"))
                throw ParseError("missing ')' in '" + s + "'");
            return f;
        }
        size_t save = i;
        std::string id = ident();
        if (id == "forall") {
            std::string bound = ident();
            if (!eat("."))
                throw ParseError("expected '.' after forall binder in '" + s + "'");
            return Formula::forall(std::move(bound), parse_implies());
        }
        i = save;
        return Formula::v(ident());
    }
};

} // namespace

Formula parse_formula(const std::string& text) {
    Parser p{text};
    Formula f = p.parse_implies();
    p.skip();
    if (p.i != text.size())
        throw ParseError("trailing input in formula '" + text + "'");
    return f;
}

// ---- evaluation ---------------------------------------------------------

ClopenSubobject eval(const Formula& f, const Valuation& valuation,
                     const SemanticsProfile& profile,
                     const std::vector<ClopenSubobject>& domain) {
    switch (f.kind) {
    case Formula::Kind::Var: {
        auto it = valuation.find(f.var);
        if (it == valuation.end())
            throw UnboundVariable("variable '" + f.var + "' has no value");
        return it->second;
    }
    case Formula::Kind::And:
        return sub_meet(eval(f.children[0], valuation, profile, domain),
                        eval(f.children[1], valuation, profile, domain));
    case Formula::Kind::Or:
        return sub_join(eval(f.children[0], valuation, profile, domain),
                        eval(f.children[1], valuation, profile, domain));
    case Formula::Kind::Not: {
        ClopenSubobject a = eval(f.children[0], valuation, profile, domain);
        switch (profile.neg) {
        case Negation::heyting:
            return heyting_not(a);
        case Negation::coheyting:
            return coheyting_not(a);
        case Negation::star:
            return star(a);
        }
        break;
    }
    case Formula::Kind::Implies: {
        ClopenSubobject a = eval(f.children[0], valuation, profile, domain);
        ClopenSubobject b = eval(f.children[1], valuation, profile, domain);
        switch (profile.imp) {
        case Implication::heyting:
            return heyting_implies(a, b);
        case Implication::co:
            return sub_join(coheyting_not(a), b);
        case Implication::star:
            return star_implies(a, b);
        }
        break;
    }
    case Formula::Kind::Forall: {
        if (domain.empty())
            throw UnboundVariable("universal quantifier with empty domain");
        Valuation inner = valuation;
        std::optional<ClopenSubobject> acc;
        for (const ClopenSubobject& d : domain) {
            inner.insert_or_assign(f.var, d);
            ClopenSubobject v = eval(f.children[0], inner, profile, domain);
            acc = acc ? sub_meet(*acc, v) : v;
        }
        return *acc;
    }
    }
    throw std::logic_error("unreachable formula kind");
}

// ---- schema instances ---------------------------------------------------

namespace {

using F = Formula;

std::vector<Formula> axiom_instances(int id) {
    F p = F::v("p"), q = F::v("q"), r = F::v("r");
    auto fa = [](const char* x, Formula body) { return F::forall(x, std::move(body)); };
    switch (id) {
    case 1:
        return {F::implies(p, p)};
    case 2:
        return {F::land(F::implies(F::land(p, q), p), F::implies(F::land(p, q), q))};
    case 3:
        return {F::implies(F::land(p, F::lor(q, r)),
                           F::lor(F::land(p, q), F::land(p, r)))};
    case 4:
        return {F::implies(F::land(F::implies(p, q), F::implies(q, r)),
                           F::implies(p, r))};
    case 5:
        return {F::implies(F::land(F::implies(p, q), F::implies(p, r)),
                           F::implies(p, F::land(q, r)))};
    case 6:
        return {F::implies(F::implies(p, F::lnot(q)), F::implies(q, F::lnot(p)))};
    case 7:
        return {F::implies(F::lnot(F::lnot(p)), p)};
    case 8:
        return {F::lor(p, F::lnot(p))};
    case 9: {
        // forall x Phi(x) -> Phi(y), with a small family of body shapes
        F x = F::v("x"), y = F::v("y");
        std::vector<Formula> out;
        std::vector<std::pair<Formula, Formula>> bodies = {
            {x, y}, {F::land(x, p), F::land(y, p)}, {F::lor(x, p), F::lor(y, p)}};
        for (auto& [bx, by] : bodies)
            out.push_back(F::implies(fa("x", bx), by));
        return out;
    }
    case 10: {
        F x = F::v("x");
        std::vector<Formula> bodies = {x, F::land(x, q), F::lor(x, q)};
        std::vector<Formula> out;
        for (Formula& b : bodies)
            out.push_back(F::implies(fa("x", F::implies(p, b)),
                                     F::implies(p, fa("x", b))));
        return out;
    }
    case 11: {
        F x = F::v("x");
        std::vector<Formula> bodies = {x, F::land(x, q), F::lor(x, q)};
        std::vector<Formula> out;
        for (Formula& b : bodies)
            out.push_back(
                F::implies(fa("x", F::lor(p, b)), F::lor(p, fa("x", b))));
        return out;
    }
    default:
        throw ParseError("axiom id must be 1..11, got " + std::to_string(id));
    }
}

struct RuleInstance {
    std::vector<Formula> premises;
    Formula conclusion;
    // pairs of variables constrained to take the same value
    std::vector<std::pair<std::string, std::string>> equal_vars;
};

std::vector<Formula> shape_family(const std::string& v1, const std::string& v2) {
    F a = F::v(v1), b = F::v(v2);
    return {a, F::lnot(a), F::land(a, b), F::lor(a, b), F::implies(a, b)};
}

std::vector<RuleInstance> rule_instances(int id) {
    F p = F::v("p"), q = F::v("q"), r = F::v("r"), s = F::v("s");
    switch (id) {
    case 1:
        return {{{p, q}, F::land(p, q), {}}};
    case 2:
        return {{{p, F::implies(p, q)}, q, {}}};
    case 3: {
        // premises Phi, ~Psi; conclusion ~(Phi -> Psi); search over composite
        // shapes since atomic instances alone cannot fail
        std::vector<RuleInstance> out;
        for (const Formula& phi : shape_family("p", "q"))
            for (const Formula& psi : shape_family("r", "s"))
                out.push_back({{phi, F::lnot(psi)},
                               F::lnot(F::implies(phi, psi)),
                               {}});
        return out;
    }
    case 4:
        return {{{F::implies(p, q), F::implies(r, s)},
                 F::implies(F::implies(q, r), F::implies(p, s)),
                 {}}};
    case 5:
        return {{{}, F::implies(p, F::forall("x", p)), {}}};
    case 6: {
        std::vector<RuleInstance> out;
        F x = F::v("x"), y = F::v("y");
        std::vector<std::pair<Formula, Formula>> bodies = {
            {x, y},
            {F::lnot(x), F::lnot(y)},
            {F::land(x, p), F::land(y, p)},
            {F::lor(x, p), F::lor(y, p)},
            {F::implies(x, p), F::implies(y, p)}};
        for (auto& [bx, by] : bodies)
            out.push_back({{}, F::implies(bx, by), {{"x", "y"}}});
        return out;
    }
    default:
        throw ParseError("rule id must be 1..6, got " + std::to_string(id));
    }
}

std::vector<std::string> instance_variables(const std::vector<Formula>& premises,
                                            const Formula& conclusion) {
    std::vector<std::string> vars;
    auto absorb = [&](const std::vector<std::string>& vs) {
        for (const auto& v : vs)
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                vars.push_back(v);
    };
    for (const Formula& f : premises)
        absorb(f.free_variables());
    absorb(conclusion.free_variables());
    return vars;
}

CounterexampleRecord make_record(const Formula& conclusion, const Valuation& valuation,
                                 const ClopenSubobject& value) {
    CounterexampleRecord rec;
    rec.formula = conclusion.text();
    for (const auto& [name, sub] : valuation)
        rec.valuation.emplace(name, sub.parts());
    rec.value = value.parts();
    return rec;
}

// Runs `body` over the valuation space of `vars`, exhaustively when it fits
// in the budget and with seeded sampling otherwise. Returns false if `body`
// reported a counterexample (stopping the scan).
template <typename Body>
void scan_valuations(const std::vector<std::string>& vars,
                     const std::vector<ClopenSubobject>& subobjects,
                     const CheckBudget& budget, CheckEntry& entry, Body&& body) {
    const long long n = static_cast<long long>(subobjects.size());
    long long total = 1;
    bool overflow = false;
    for (size_t k = 0; k < vars.size(); ++k) {
        total *= n;
        if (total > budget.max_valuations) {
            overflow = true;
            break;
        }
    }
    if (!overflow) {
        if (entry.mode.empty())
            entry.mode = "exhaustive";
        std::vector<int> idx(vars.size(), 0);
        while (true) {
            Valuation val;
            for (size_t k = 0; k < vars.size(); ++k)
                val.emplace(vars[k], subobjects[idx[k]]);
            ++entry.checked;
            if (!body(val))
                return;
            size_t k = 0;
            for (; k < vars.size(); ++k) {
                if (++idx[k] < n)
                    break;
                idx[k] = 0;
            }
            if (k == vars.size())
                break;
            if (vars.empty())
                break;
        }
        return;
    }
    entry.mode = "sampled(seed=" + std::to_string(budget.seed) +
                 ",count=" + std::to_string(budget.max_valuations) + ")";
    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<long long> pick(0, n - 1);
    for (long long it = 0; it < budget.max_valuations; ++it) {
        Valuation val;
        for (const std::string& v : vars)
            val.emplace(v, subobjects[pick(rng)]);
        ++entry.checked;
        if (!body(val))
            return;
    }
}

} // namespace

std::string status_string(Status s) {
    switch (s) {
    case Status::valid:
        return "valid";
    case Status::counterexample:
        return "counterexample";
    case Status::budget_exhausted:
        return "budget-exhausted";
    }
    return "?";
}

CheckEntry check_axiom(int id, const SpectralPresheaf& P,
                       const std::vector<ClopenSubobject>& subobjects,
                       const SemanticsProfile& profile, const CheckBudget& budget) {
    CheckEntry entry;
    entry.id = "axiom " + std::to_string(id);
    std::vector<Formula> instances = axiom_instances(id);
    entry.description = instances.front().text();
    for (const Formula& f : instances) {
        if (entry.status == Status::counterexample)
            break;
        scan_valuations(f.free_variables(), subobjects, budget, entry,
                        [&](const Valuation& val) {
                            ClopenSubobject v = eval(f, val, profile, subobjects);
                            if (!v.is_top()) {
                                entry.status = Status::counterexample;
                                entry.counterexample = make_record(f, val, v);
                                return false;
                            }
                            return true;
                        });
    }
    (void)P;
    return entry;
}

CheckEntry check_rule(int id, const SpectralPresheaf& P,
                      const std::vector<ClopenSubobject>& subobjects,
                      const SemanticsProfile& profile, const CheckBudget& budget) {
    CheckEntry entry;
    entry.id = "rule " + std::to_string(id);
    std::vector<RuleInstance> instances = rule_instances(id);
    entry.description = instances.front().conclusion.text();
    ClopenSubobject topv = ClopenSubobject::top(P);
    for (const RuleInstance& inst : instances) {
        if (entry.status == Status::counterexample)
            break;
        std::vector<std::string> vars =
            instance_variables(inst.premises, inst.conclusion);
        scan_valuations(vars, subobjects, budget, entry, [&](const Valuation& val) {
            for (const auto& [a, b] : inst.equal_vars)
                if (!(val.at(a) == val.at(b)))
                    return true; // constraint not met; not a test case
            for (const Formula& prem : inst.premises)
                if (!eval(prem, val, profile, subobjects).is_top())
                    return true; // premises not designated
            ClopenSubobject v = eval(inst.conclusion, val, profile, subobjects);
            if (!v.is_top()) {
                entry.status = Status::counterexample;
                entry.counterexample = make_record(inst.conclusion, val, v);
                return false;
            }
            return true;
        });
    }
    if (id == 3 && entry.status == Status::valid)
        entry.note = "counterexample search exhausted over all checked instances; "
                     "the rule is not guaranteed on every algebra";
    return entry;
}

ValidationReport full_logic_report(const SpectralPresheaf& P,
                                   const SemanticsProfile& profile,
                                   const CheckBudget& budget,
                                   const std::string& lattice_name) {
    ValidationReport report;
    report.lattice = lattice_name;
    report.profile = profile.name;
    report.seed = budget.seed;
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);
    for (int id = 1; id <= 11; ++id)
        report.axioms.push_back(check_axiom(id, P, subs, profile, budget));
    for (int id = 1; id <= 6; ++id)
        report.rules.push_back(check_rule(id, P, subs, profile, budget));
    report.mode = report.axioms.front().mode;
    return report;
}

bool ValidationReport::all_axioms_valid() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const CheckEntry& e) {
        return e.status == Status::valid;
    });
}

bool replay_counterexample(const SpectralPresheaf& P,
                           const SemanticsProfile& profile,
                           const CounterexampleRecord& record,
                           const std::vector<ClopenSubobject>& subobjects) {
    Formula f = parse_formula(record.formula);
    Valuation val;
    for (const auto& [name, parts] : record.valuation)
        val.emplace(name, ClopenSubobject(P, parts));
    ClopenSubobject v = eval(f, val, profile, subobjects);
    return v.parts() == record.value;
}

} // namespace omlq::logic
