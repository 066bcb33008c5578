#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omlq/logic.hpp"
#include "omlq/daseinisation.hpp"

using namespace omlq;
using namespace omlq::logic;

namespace {

struct Mo2Fixture {
    Oml L = make_mo(2);
    SpectralPresheaf P = SpectralPresheaf::build(L);
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);
};

} // namespace

TEST_CASE("formula parsing and printing") {
    CHECK(parse_formula("p & q -> ~r | s").text() ==
          "((p & q) -> (~r | s))");
    CHECK(parse_formula("p -> q -> r").text() == "(p -> (q -> r))");
    CHECK(parse_formula("~p & q").text() == "(~p & q)");
    CHECK(parse_formula("forall x . x -> p").text() == "(forall x . (x -> p))");
    Formula f = parse_formula("(p | q) & r");
    CHECK(f.free_variables() == std::vector<std::string>{"p", "q", "r"});
    CHECK(parse_formula("forall x . x & p").free_variables() ==
          std::vector<std::string>{"p"});

    CHECK_THROWS_AS(parse_formula("p &"), ParseError);
    CHECK_THROWS_AS(parse_formula("(p"), ParseError);
    CHECK_THROWS_AS(parse_formula("forall . p"), ParseError);
    CHECK_THROWS_AS(parse_formula(""), ParseError);
}

TEST_CASE("eval basics and error paths") {
    Mo2Fixture fx;
    SemanticsProfile star_p = SemanticsProfile::star();
    Valuation v;
    v.emplace("p", daseinise(fx.P, 1));
    CHECK(eval(parse_formula("p -> p"), v, star_p, fx.subs).is_top());
    CHECK_THROWS_AS(eval(parse_formula("p & q"), v, star_p, fx.subs),
                    UnboundVariable);
}

TEST_CASE("identity law holds under star for every subobject") {
    Mo2Fixture fx;
    SemanticsProfile star_p = SemanticsProfile::star();
    Formula f = parse_formula("p -> p");
    for (const ClopenSubobject& s : fx.subs) {
        Valuation v;
        v.emplace("p", s);
        CHECK(eval(f, v, star_p, fx.subs).is_top());
    }
}

TEST_CASE("excluded middle separates the heyting and star profiles") {
    Mo2Fixture fx;
    Formula lem = parse_formula("p | ~p");
    ClopenSubobject da = daseinise(fx.P, 1);
    Valuation v;
    v.emplace("p", da);

    ClopenSubobject hey = eval(lem, v, SemanticsProfile::heyting(), fx.subs);
    CHECK(hey == da); // heyting_not(delta(a)) is bottom
    CHECK_FALSE(hey.is_top());

    CHECK(eval(lem, v, SemanticsProfile::star(), fx.subs).is_top());
}

TEST_CASE("double negation elimination under star") {
    Mo2Fixture fx;
    Formula f = parse_formula("~~p -> p");
    for (const ClopenSubobject& s : fx.subs) {
        Valuation v;
        v.emplace("p", s);
        CHECK(eval(f, v, SemanticsProfile::star(), fx.subs).is_top());
    }
}

TEST_CASE("contraposition and De Morgan hold connective-level under star") {
    Mo2Fixture fx;
    SemanticsProfile sp = SemanticsProfile::star();
    Formula contra = parse_formula("(p -> ~q) -> (q -> ~p)");
    Formula dm_l = parse_formula("~(p & q)");
    Formula dm_r = parse_formula("~p | ~q");
    for (const ClopenSubobject& s : fx.subs)
        for (const ClopenSubobject& t : fx.subs) {
            Valuation v;
            v.emplace("p", s);
            v.emplace("q", t);
            CHECK(eval(contra, v, sp, fx.subs).is_top());
            CHECK(eval(dm_l, v, sp, fx.subs) == eval(dm_r, v, sp, fx.subs));
        }
}

TEST_CASE("axiom checks on MO2") {
    Mo2Fixture fx;
    SemanticsProfile sp = SemanticsProfile::star();

    CheckEntry a1 = check_axiom(1, fx.P, fx.subs, sp);
    CHECK(a1.status == Status::valid);
    CHECK(a1.checked == 17);

    CheckEntry a8s = check_axiom(8, fx.P, fx.subs, sp);
    CHECK(a8s.status == Status::valid);

    CheckEntry a8h = check_axiom(8, fx.P, fx.subs, SemanticsProfile::heyting());
    REQUIRE(a8h.status == Status::counterexample);
    REQUIRE(a8h.counterexample.has_value());
    CHECK(replay_counterexample(fx.P, SemanticsProfile::heyting(),
                                *a8h.counterexample, fx.subs));

    CheckEntry a7 = check_axiom(7, fx.P, fx.subs, sp);
    CHECK(a7.status == Status::valid);
}

// The non-involutive side of star (S** <= S, strictly for some S) lets a
// non-bottom subobject with epsilon value 0 have a top-valued negation, and
// transitivity breaks on exactly such instances. Pinned here so the behavior
// is tracked rather than rediscovered.
TEST_CASE("transitivity-shaped schemata fail on MO2 under star") {
    Mo2Fixture fx;
    SemanticsProfile sp = SemanticsProfile::star();

    CheckEntry a4 = check_axiom(4, fx.P, fx.subs, sp);
    REQUIRE(a4.status == Status::counterexample);
    REQUIRE(a4.counterexample.has_value());
    CHECK(replay_counterexample(fx.P, sp, *a4.counterexample, fx.subs));

    CheckEntry r4 = check_rule(4, fx.P, fx.subs, sp);
    CHECK(r4.status == Status::counterexample);
}

TEST_CASE("rules on MO2 under star") {
    Mo2Fixture fx;
    SemanticsProfile sp = SemanticsProfile::star();
    for (int id : {1, 2, 5, 6})
        CHECK(check_rule(id, fx.P, fx.subs, sp).status == Status::valid);

    CheckEntry r3 = check_rule(3, fx.P, fx.subs, sp);
    CHECK(r3.status == Status::valid); // no witness on this lattice
    CHECK(r3.note.find("exhausted") != std::string::npos);
}

TEST_CASE("boolean 2^2 validates everything under star") {
    Oml b2 = make_boolean(2);
    SpectralPresheaf P = SpectralPresheaf::build(b2);
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);
    SemanticsProfile sp = SemanticsProfile::star();
    for (int id = 1; id <= 11; ++id)
        CHECK(check_axiom(id, P, subs, sp).status == Status::valid);
    for (int id = 1; id <= 6; ++id)
        CHECK(check_rule(id, P, subs, sp).status == Status::valid);
}

TEST_CASE("quantifier axioms use finite meets over the domain") {
    Mo2Fixture fx;
    SemanticsProfile sp = SemanticsProfile::star();
    for (int id : {9, 10, 11})
        CHECK(check_axiom(id, fx.P, fx.subs, sp).status == Status::valid);

    // forall x . x is the meet of the whole domain, which is bottom
    Valuation empty;
    CHECK(eval(parse_formula("forall x . x"), empty, sp, fx.subs).is_bottom());
}

TEST_CASE("sampling is seeded and deterministic") {
    Mo2Fixture fx;
    SemanticsProfile sp = SemanticsProfile::star();
    CheckBudget tight;
    tight.max_valuations = 100;
    tight.seed = 7;
    CheckEntry first = check_axiom(4, fx.P, fx.subs, sp, tight);
    CheckEntry second = check_axiom(4, fx.P, fx.subs, sp, tight);
    CHECK(first.mode == second.mode);
    CHECK(first.mode.find("sampled") != std::string::npos);
    CHECK(first.checked == second.checked);
    CHECK(first.status == second.status);
    if (first.counterexample) {
        REQUIRE(second.counterexample);
        CHECK(first.counterexample->formula == second.counterexample->formula);
        CHECK(first.counterexample->valuation == second.counterexample->valuation);
    }
}

TEST_CASE("full report aggregates axioms and rules") {
    Mo2Fixture fx;
    ValidationReport r =
        full_logic_report(fx.P, SemanticsProfile::star(), {}, "mo2");
    CHECK(r.axioms.size() == 11);
    CHECK(r.rules.size() == 6);
    CHECK_FALSE(r.all_axioms_valid()); // axiom 4, see above
    int invalid = 0;
    for (const CheckEntry& e : r.axioms)
        if (e.status != Status::valid)
            ++invalid;
    CHECK(invalid == 1);
}

TEST_CASE("replay rejects tampered counterexamples") {
    Mo2Fixture fx;
    SemanticsProfile hp = SemanticsProfile::heyting();
    CheckEntry a8 = check_axiom(8, fx.P, fx.subs, hp);
    REQUIRE(a8.counterexample);
    CounterexampleRecord bad = *a8.counterexample;
    bad.value[0] ^= 1;
    CHECK_FALSE(replay_counterexample(fx.P, hp, bad, fx.subs));
}

TEST_CASE("profile names") {
    CHECK(SemanticsProfile::from_name("star").name == "star");
    CHECK(SemanticsProfile::from_name("heyting").name == "heyting");
    CHECK(SemanticsProfile::from_name("coheyting").name == "coheyting");
    CHECK_THROWS_AS(SemanticsProfile::from_name("classical"), ParseError);
}
