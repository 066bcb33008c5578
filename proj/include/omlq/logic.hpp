#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omlq/presheaf.hpp"

namespace omlq::logic {

enum class Negation { heyting, coheyting, star };
enum class Implication { heyting, co, star };

struct SemanticsProfile {
    std::string name;
    Negation neg;
    Implication imp;

    static SemanticsProfile heyting();
    static SemanticsProfile coheyting();
    static SemanticsProfile star();
    static SemanticsProfile from_name(const std::string& name);
};

// Propositional formulas plus a universal quantifier whose bound variable
// ranges over a finite domain of subobjects supplied at evaluation time.
struct Formula {
    enum class Kind { Var, And, Or, Not, Implies, Forall };
    Kind kind = Kind::Var;
    std::string var; // Var: name; Forall: bound variable
    std::vector<Formula> children;

    static Formula v(std::string name);
    static Formula land(Formula a, Formula b);
    static Formula lor(Formula a, Formula b);
    static Formula lnot(Formula a);
    static Formula implies(Formula a, Formula b);
    static Formula forall(std::string bound, Formula body);

    std::string text() const;
    // free variables in first-appearance order
    std::vector<std::string> free_variables() const;
};

// Grammar: vars are identifiers; `~` binds tightest, then `&`, then `|`,
// then right-associative `->`; `forall x . body` scopes to the end of the
// enclosing (sub)expression.
Formula parse_formula(const std::string& text);

using Valuation = std::map<std::string, ClopenSubobject>;

ClopenSubobject eval(const Formula& f, const Valuation& valuation,
                     const SemanticsProfile& profile,
                     const std::vector<ClopenSubobject>& domain);

enum class Status { valid, counterexample, budget_exhausted };

std::string status_string(Status s);

struct CounterexampleRecord {
    std::string formula; // the failing instance
    std::map<std::string, std::vector<std::uint64_t>> valuation; // var -> parts
    std::vector<std::uint64_t> value; // evaluated parts (non-top)
};

struct CheckEntry {
    std::string id; // "axiom 3", "rule 2", ...
    std::string description;
    Status status = Status::valid;
    std::optional<CounterexampleRecord> counterexample;
    long long checked = 0;
    std::string mode; // "exhaustive" or "sampled(seed=...,count=...)"
    std::string note;
};

struct ValidationReport {
    std::string lattice;
    std::string profile;
    std::string mode;
    std::uint64_t seed = 0;
    std::vector<CheckEntry> axioms;
    std::vector<CheckEntry> rules;
    bool all_axioms_valid() const;
};

struct CheckBudget {
    long long max_valuations = 200000; // fall back to sampling beyond this
    std::uint64_t seed = 0;
};

// Axiom schemata 1..11 (2 covers both projection forms) checked as
// designated-value validity: every valuation must evaluate to top.
CheckEntry check_axiom(int id, const SpectralPresheaf& P,
                       const std::vector<ClopenSubobject>& subobjects,
                       const SemanticsProfile& profile, const CheckBudget& budget = {});

// Rules 1..6 checked as designated-value preservation.
CheckEntry check_rule(int id, const SpectralPresheaf& P,
                      const std::vector<ClopenSubobject>& subobjects,
                      const SemanticsProfile& profile, const CheckBudget& budget = {});

// All axioms and rules under one profile (star by default elsewhere).
ValidationReport full_logic_report(const SpectralPresheaf& P,
                                   const SemanticsProfile& profile,
                                   const CheckBudget& budget = {},
                                   const std::string& lattice_name = "");

// Re-evaluates a stored counterexample; true iff it reproduces bit-for-bit.
bool replay_counterexample(const SpectralPresheaf& P,
                           const SemanticsProfile& profile,
                           const CounterexampleRecord& record,
                           const std::vector<ClopenSubobject>& subobjects);

} // namespace omlq::logic
