#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omlq/presheaf.hpp"

using namespace omlq;

namespace {

// Residual oracle: the largest R with s ^ r <= t, found by brute force.
ClopenSubobject oracle_implies(const std::vector<ClopenSubobject>& all,
                               const SpectralPresheaf& P,
                               const ClopenSubobject& s, const ClopenSubobject& t) {
    ClopenSubobject acc = ClopenSubobject::bottom(P);
    for (const ClopenSubobject& r : all)
        if (sub_leq(sub_meet(s, r), t))
            acc = sub_join(acc, r);
    return acc;
}

// Co-residual oracle: the smallest R with t <= s v r.
ClopenSubobject oracle_minus(const std::vector<ClopenSubobject>& all,
                             const SpectralPresheaf& P,
                             const ClopenSubobject& t, const ClopenSubobject& s) {
    ClopenSubobject acc = ClopenSubobject::top(P);
    for (const ClopenSubobject& r : all)
        if (sub_leq(t, sub_join(s, r)))
            acc = sub_meet(acc, r);
    return acc;
}

} // namespace

TEST_CASE("Stone isomorphism on the full 2^3 algebra") {
    Oml b3 = make_boolean(3);
    SubalgebraPoset poset = enumerate_boolean_subalgebras(b3);
    const BooleanSubalgebra& full = poset.members.back();
    REQUIRE(full.carrier.size() == 8);
    for (Elem a : full.carrier) {
        std::uint64_t mask = stone_iso(b3, full, a);
        CHECK(stone_iso_inv(b3, full, mask) == a);
    }
    // and back: every point mask is hit
    StoneSpace sp = stone_space(b3, full);
    CHECK(sp.point_count() == 3);
    for (std::uint64_t m = 0; m < 8; ++m)
        CHECK(stone_iso(b3, full, stone_iso_inv(b3, full, m)) == m);
    CHECK_THROWS_AS(stone_iso(b3, poset.members.front(), 1),
                    ElementNotInSubalgebra);
}

TEST_CASE("presheaf fibers and restriction functoriality") {
    Oml mo2 = make_mo(2);
    SpectralPresheaf P = SpectralPresheaf::build(mo2);
    REQUIRE(P.fiber_count() == 3);
    CHECK(P.fiber(0).point_count() == 1);
    CHECK(P.fiber(1).point_count() == 2);
    CHECK(P.fiber(2).point_count() == 2);

    // restriction to the trivial context collapses everything to the point
    for (int b = 1; b < 3; ++b)
        for (int p = 0; p < P.fiber(b).point_count(); ++p)
            CHECK(P.restrict_point(b, 0, p) == 0);
}

TEST_CASE("subobject validation and enumeration counts") {
    Oml mo2 = make_mo(2);
    SpectralPresheaf P = SpectralPresheaf::build(mo2);

    CHECK(enumerate_subobjects(P).size() == 17);

    Oml b2 = make_boolean(2);
    SpectralPresheaf Q = SpectralPresheaf::build(b2);
    CHECK(enumerate_subobjects(Q).size() == 5);

    // a point in a big fiber whose restriction is missing below
    CHECK_THROWS_AS(ClopenSubobject(P, {0, 1, 0}), ValidationError);
    CHECK_NOTHROW(ClopenSubobject(P, {1, 1, 0}));
}

TEST_CASE("lattice operations and bounds") {
    Oml mo2 = make_mo(2);
    SpectralPresheaf P = SpectralPresheaf::build(mo2);
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);
    ClopenSubobject top = ClopenSubobject::top(P);
    ClopenSubobject bot = ClopenSubobject::bottom(P);
    CHECK(top.is_top());
    CHECK(bot.is_bottom());
    for (const ClopenSubobject& s : subs) {
        CHECK(sub_leq(bot, s));
        CHECK(sub_leq(s, top));
        CHECK(sub_meet(s, top) == s);
        CHECK(sub_join(s, bot) == s);
    }
    // distributivity of the subobject lattice (pointwise set operations)
    for (const ClopenSubobject& s : subs)
        for (const ClopenSubobject& t : subs)
            for (const ClopenSubobject& u : subs)
                CHECK(sub_meet(s, sub_join(t, u)) ==
                      sub_join(sub_meet(s, t), sub_meet(s, u)));
}

TEST_CASE("Heyting implication is the residual") {
    Oml mo2 = make_mo(2);
    SpectralPresheaf P = SpectralPresheaf::build(mo2);
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);
    for (const ClopenSubobject& s : subs)
        for (const ClopenSubobject& t : subs) {
            ClopenSubobject imp = heyting_implies(s, t);
            CHECK(imp == oracle_implies(subs, P, s, t));
            for (const ClopenSubobject& r : subs)
                CHECK(sub_leq(sub_meet(s, r), t) == sub_leq(r, imp));
        }
}

TEST_CASE("co-Heyting subtraction is the co-residual") {
    Oml mo2 = make_mo(2);
    SpectralPresheaf P = SpectralPresheaf::build(mo2);
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);
    for (const ClopenSubobject& t : subs)
        for (const ClopenSubobject& s : subs) {
            ClopenSubobject diff = coheyting_minus(t, s);
            CHECK(diff == oracle_minus(subs, P, t, s));
            for (const ClopenSubobject& r : subs)
                CHECK(sub_leq(t, sub_join(s, r)) == sub_leq(diff, r));
        }
}

TEST_CASE("the two negations behave intuitionistically / paraconsistently") {
    Oml mo2 = make_mo(2);
    SpectralPresheaf P = SpectralPresheaf::build(mo2);
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);

    bool lem_fails = false;    // exists S with ~S v S != top
    bool contra_fails = false; // exists S with coheyting_not(S) ^ S != bottom
    for (const ClopenSubobject& s : subs) {
        if (!sub_join(heyting_not(s), s).is_top())
            lem_fails = true;
        if (!sub_meet(coheyting_not(s), s).is_bottom())
            contra_fails = true;
        // the laws that do hold
        CHECK(sub_meet(heyting_not(s), s).is_bottom());
        CHECK(sub_join(coheyting_not(s), s).is_top());
    }
    CHECK(lem_fails);
    CHECK(contra_fails);
}

TEST_CASE("subobjects of different presheaves do not mix") {
    Oml mo2 = make_mo(2);
    SpectralPresheaf P = SpectralPresheaf::build(mo2);
    SpectralPresheaf Q = SpectralPresheaf::build(mo2);
    CHECK_THROWS_AS(sub_meet(ClopenSubobject::top(P), ClopenSubobject::top(Q)),
                    ParentMismatch);
}

TEST_CASE("subobject enumeration respects the cap") {
    Oml b3 = make_boolean(3);
    Caps caps;
    caps.max_subobject_combinations = 10;
    SpectralPresheaf P = SpectralPresheaf::build(b3, caps);
    CHECK_THROWS_AS(enumerate_subobjects(P), SizeCapExceeded);
}
