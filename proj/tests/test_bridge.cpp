#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omlq/bridge.hpp"

using namespace omlq;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p, q); }

RationalMatrix diag2(const Rational& a, const Rational& b) {
    return RationalMatrix::diag({a, b});
}

// shared context generated by the coordinate line and the diagonal line
BridgeContext& q2_context() {
    static BridgeContext ctx = BridgeContext::build(
        {Projection::from_basis(2, {{r(1), r(0)}}),
         Projection::from_basis(2, {{r(1), r(1)}})});
    return ctx;
}

RationalGrid grid_1_2() {
    return RationalGrid::make({r(0), r(1), r(3, 2), r(2), r(5, 2)});
}

} // namespace

TEST_CASE("grid construction") {
    CHECK(grid_1_2().on_grid(r(3, 2)));
    CHECK_FALSE(grid_1_2().on_grid(r(7, 4)));
    CHECK_THROWS_AS(RationalGrid::make({}), ValidationError);
    CHECK_THROWS_AS(RationalGrid::make({r(0), r(0)}), ValidationError);
    CHECK_THROWS_AS(RationalGrid::make({r(1), r(0)}), ValidationError);
}

TEST_CASE("context build exposes the generated six element lattice") {
    BridgeContext& ctx = q2_context();
    CHECK(ctx.gen.oml.size() == 6);
    CHECK(ctx.presheaf->fiber_count() == 3);
    CHECK(ctx.quotient->class_count() == 6);
}

TEST_CASE("name of a diagonal operator samples its spectral family") {
    BridgeContext& ctx = q2_context();
    RealName u = bridge_H(diag2(r(1), r(2)), grid_1_2(), ctx);
    REQUIRE(u.values.size() == 5);

    ClopenSubobject bot = ClopenSubobject::bottom(*ctx.presheaf);
    ClopenSubobject top = ClopenSubobject::top(*ctx.presheaf);
    Elem e1 = *ctx.gen.find(Projection::from_basis(2, {{r(1), r(0)}}));
    ClopenSubobject de1 = daseinise(*ctx.presheaf, e1);

    CHECK(u.values[0] == bot);  // q = 0
    CHECK(u.values[1] == bot);  // q = 1, left continuity
    CHECK(u.values[2] == de1);  // q = 3/2
    CHECK(u.values[3] == de1);  // q = 2
    CHECK(u.values[4] == top);  // q = 5/2
}

TEST_CASE("bridging rejects bad inputs") {
    BridgeContext& ctx = q2_context();
    // grid stops below the top eigenvalue
    CHECK_THROWS_AS(
        bridge_H(diag2(r(1), r(2)), RationalGrid::make({r(0), r(1), r(3, 2)}), ctx),
        GridDoesNotBracketSpectrum);
    // grid starts above the bottom eigenvalue
    CHECK_THROWS_AS(
        bridge_H(diag2(r(1), r(2)), RationalGrid::make({r(3, 2), r(3)}), ctx),
        GridDoesNotBracketSpectrum);
    // the eigenprojections of this operator are not context elements
    RationalMatrix skew(2);
    skew.at(0, 0) = r(1, 5);
    skew.at(0, 1) = skew.at(1, 0) = r(2, 5);
    skew.at(1, 1) = r(4, 5);
    // sampling between the eigenvalues 0 and 3 hits a projection the
    // context does not contain
    CHECK_THROWS_AS(
        bridge_H(skew.scaled(r(3)), RationalGrid::make({r(-1), r(1), r(4)}), ctx),
        ProjectionNotInContext);
}

TEST_CASE("membership and the step convention") {
    BridgeContext& ctx = q2_context();
    RealName u = bridge_H(diag2(r(1), r(2)), grid_1_2(), ctx);

    CHECK(membership(u, r(2)) == u.values[3]);
    CHECK_THROWS_AS(membership(u, r(7, 4)), OffGridRational);
    // step convention: constant on [grid point, next grid point)
    CHECK(membership(u, r(7, 4), true) == u.values[2]);
    CHECK(membership(u, r(10), true) == u.values[4]);
    CHECK(membership(u, r(-3), true) == u.values[0]);
}

TEST_CASE("names of context operators are Dedekind reals") {
    BridgeContext& ctx = q2_context();
    for (const RationalMatrix& a :
         {diag2(r(1), r(2)), diag2(r(0), r(0)), diag2(r(2), r(1))}) {
        RationalGrid g = RationalGrid::make({r(-1), r(0), r(1), r(2), r(3)});
        DedekindReport rep = is_dedekind_real(bridge_H(a, g, ctx));
        CHECK(rep.is_dedekind());
        CHECK(rep.witness.empty());
    }
}

TEST_CASE("a tampered name is flagged with a witness") {
    BridgeContext& ctx = q2_context();
    RealName u = bridge_H(diag2(r(1), r(2)), grid_1_2(), ctx);
    std::swap(u.values[2], u.values[4]); // break monotonicity and the top
    DedekindReport rep = is_dedekind_real(u);
    CHECK_FALSE(rep.monotone);
    CHECK_FALSE(rep.top_is_top);
    CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("cuts recover the spectral projections through epsilon") {
    BridgeContext& ctx = q2_context();
    RealName u = bridge_H(diag2(r(1), r(2)), grid_1_2(), ctx);

    // E_lambda = meet of the u(q) with q > lambda; epsilon collapses the
    // daseinised values back onto spectral projections of the operator
    ProjectionFamily f = spectral_family(diag2(r(1), r(2)));
    for (const Rational& lam : {r(0), r(1), r(3, 2), r(2)}) {
        Elem e = epsilon(cut_to_E(u, lam));
        // smallest grid point above lambda carries the fiberwise meet
        CHECK(ctx.gen.elements[e] == f.value_at(lam + r(1, 100)));
    }
    CHECK_THROWS_AS(cut_to_E(u, r(5, 2)), LambdaAboveGrid);
    CHECK_THROWS_AS(cut_to_E(u, r(7)), LambdaAboveGrid);
}

TEST_CASE("operator side family G is weakly right continuous") {
    BridgeContext& ctx = q2_context();
    RealName u = bridge_H(diag2(r(1), r(2)), grid_1_2(), ctx);
    LatticeCutFamily g = to_operator_family_G(u);
    REQUIRE(g.values.size() == 5);
    CHECK(g.values[0] == ctx.gen.oml.bottom());
    CHECK(g.values[4] == ctx.gen.oml.top());
    // value at lambda is taken at the first grid point strictly above it
    CHECK(g.value_at(r(-5)) == g.values[0]);
    CHECK(g.value_at(r(1)) == g.values[2]);
    CHECK(g.value_at(r(7, 4)) == g.values[3]);
    CHECK(g.value_at(r(9, 4)) == g.values[4]);
    CHECK_THROWS_AS(g.value_at(r(5, 2)), LambdaAboveGrid);

    WrcFamilyReport rep = verify_wrc_family(g);
    CHECK(rep.meet_is_zero);
    CHECK(rep.step_convention_ok);
    CHECK(rep.sup_is_one);
}

TEST_CASE("equality truth value and injectivity") {
    BridgeContext& ctx = q2_context();
    RationalGrid g = RationalGrid::make({r(0), r(1), r(3, 2), r(2), r(5, 2), r(3), r(4)});
    logic::SemanticsProfile star = logic::SemanticsProfile::from_name("star");
    logic::SemanticsProfile hey = logic::SemanticsProfile::from_name("heyting");

    RealName u = bridge_H(diag2(r(1), r(2)), g, ctx);
    RealName v = bridge_H(diag2(r(1), r(3)), g, ctx);

    CHECK(equality_truth(u, u, star) == ClopenSubobject::top(*ctx.presheaf));
    CHECK(equality_truth(u, v, star) != ClopenSubobject::top(*ctx.presheaf));

    for (const logic::SemanticsProfile& prof : {star, hey}) {
        InjectivityReport rep = injectivity_experiment(u, v, prof);
        CHECK_FALSE(rep.equality_is_top);
        REQUIRE(rep.distinguishing_q.has_value());
        CHECK(*rep.distinguishing_q == r(5, 2));
        CHECK(rep.g_families_differ);
        REQUIRE(rep.g_witness.has_value());
        CHECK(*rep.g_witness == r(5, 2));
    }

    InjectivityReport same = injectivity_experiment(u, u, star);
    CHECK(same.equality_is_top);
    CHECK_FALSE(same.distinguishing_q.has_value());
    CHECK_FALSE(same.g_families_differ);
}

TEST_CASE("matrix level experiment flags the grid resolution limit") {
    BridgeContext& ctx = q2_context();
    logic::SemanticsProfile star = logic::SemanticsProfile::from_name("star");

    // distinct operators, but the grid never separates eigenvalues 2 and 9/4
    RationalGrid coarse = RationalGrid::make({r(0), r(1), r(3, 2), r(5, 2), r(3)});
    InjectivityReport rep = injectivity_experiment(
        diag2(r(1), r(2)), diag2(r(1), r(9, 4)), coarse, ctx, star);
    CHECK(rep.operators_differ);
    CHECK(rep.equality_is_top);
    CHECK_FALSE(rep.g_families_differ);
    CHECK(rep.grid_resolution_limit);

    // a finer grid resolves them
    RationalGrid fine = RationalGrid::make({r(0), r(1), r(3, 2), r(17, 8), r(5, 2), r(3)});
    InjectivityReport rep2 = injectivity_experiment(
        diag2(r(1), r(2)), diag2(r(1), r(9, 4)), fine, ctx, star);
    CHECK(rep2.operators_differ);
    CHECK_FALSE(rep2.equality_is_top);
    CHECK(*rep2.distinguishing_q == r(17, 8));
    CHECK_FALSE(rep2.grid_resolution_limit);
}

TEST_CASE("mismatched names are rejected") {
    BridgeContext& ctx = q2_context();
    RealName u = bridge_H(diag2(r(1), r(2)), grid_1_2(), ctx);
    RealName w = bridge_H(diag2(r(1), r(2)),
                          RationalGrid::make({r(0), r(1), r(2), r(5, 2)}), ctx);
    logic::SemanticsProfile star = logic::SemanticsProfile::from_name("star");
    CHECK_THROWS_AS(equality_truth(u, w, star), GridMismatch);
    CHECK_THROWS_AS(injectivity_experiment(u, w, star), GridMismatch);

    BridgeContext other = BridgeContext::build(
        {Projection::from_basis(2, {{r(1), r(0)}}),
         Projection::from_basis(2, {{r(1), r(1)}})});
    RealName v = bridge_H(diag2(r(1), r(2)), grid_1_2(), other);
    CHECK_THROWS_AS(equality_truth(u, v, star), ContextMismatch);
}
