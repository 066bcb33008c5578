#include "omlq/bridge.hpp"

#include <algorithm>

namespace omlq {

RationalGrid RationalGrid::make(std::vector<Rational> points) {
    if (points.empty())
        throw ValidationError("grid must be nonempty");
    for (size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i] < points[i + 1]))
            throw ValidationError("grid points must be strictly increasing");
    return RationalGrid{std::move(points)};
}

bool RationalGrid::on_grid(const Rational& q) const {
    return std::find(points.begin(), points.end(), q) != points.end();
}

BridgeContext BridgeContext::build(const std::vector<Projection>& generators,
                                   const Caps& caps) {
    GeneratedOml gen = generate_oml(generators, caps);
    auto presheaf = std::make_unique<SpectralPresheaf>(
        SpectralPresheaf::build(gen.oml, caps));
    auto quotient = std::make_unique<EQuotient>(*presheaf);
    return BridgeContext{std::move(gen), std::move(presheaf), std::move(quotient)};
}

namespace {

RealName bridge_from_family(const ProjectionFamily& family,
                            const RationalGrid& grid, const BridgeContext& ctx) {
    if (!(grid.points.front() <= family.breakpoints.front()) ||
        !(grid.points.back() > family.breakpoints.back()))
        throw GridDoesNotBracketSpectrum(
            "grid [" + rational_string(grid.points.front()) + ", " +
            rational_string(grid.points.back()) +
            "] does not bracket the spectrum [" +
            rational_string(family.breakpoints.front()) + ", " +
            rational_string(family.breakpoints.back()) + "]");
    RealName u{&ctx, grid, {}};
    for (const Rational& q : grid.points) {
        Projection aq = family.value_at(q);
        std::optional<Elem> e = ctx.gen.find(aq);
        if (!e)
            throw ProjectionNotInContext("spectral projection at q = " +
                                         rational_string(q) +
                                         " is not an element of the context");
        u.values.push_back(daseinise(*ctx.presheaf, *e));
    }
    return u;
}

} // namespace

RealName bridge_H(const RationalMatrix& a, const RationalGrid& grid,
                  const BridgeContext& ctx) {
    return bridge_from_family(spectral_family(a), grid, ctx);
}

RealName bridge_H(const std::vector<std::pair<Rational, Projection>>& eigen,
                  const RationalGrid& grid, const BridgeContext& ctx) {
    return bridge_from_family(spectral_family(eigen), grid, ctx);
}

ClopenSubobject membership(const RealName& u, const Rational& q,
                           bool step_convention) {
    for (size_t i = 0; i < u.grid.points.size(); ++i)
        if (u.grid.points[i] == q)
            return u.values[i];
    if (!step_convention)
        throw OffGridRational(rational_string(q) + " is not a grid point");
    size_t best = 0; // below the grid: the first value
    for (size_t i = 0; i < u.grid.points.size(); ++i)
        if (u.grid.points[i] <= q)
            best = i;
    return u.values[best];
}

DedekindReport is_dedekind_real(const RealName& u) {
    DedekindReport r;
    r.monotone = true;
    for (size_t i = 0; i + 1 < u.values.size(); ++i)
        if (!sub_leq(u.values[i], u.values[i + 1])) {
            r.monotone = false;
            r.witness = "values decrease between " +
                        rational_string(u.grid.points[i]) + " and " +
                        rational_string(u.grid.points[i + 1]);
        }
    r.bottom_is_bottom = u.values.front().is_bottom();
    if (!r.bottom_is_bottom && r.witness.empty())
        r.witness = "P at the first grid point is not bottom";
    r.top_is_top = u.values.back().is_top();
    if (!r.top_is_top && r.witness.empty())
        r.witness = "P at the last grid point is not top";
    // (iii): under the right-continuous step convention the meet over s > r
    // of P_s is the value at the next grid point only if values are constant
    // between grid points, which the convention enforces; at grid points the
    // condition reads meet_{s>r, s on grid} P_s ... >= P_r with equality iff
    // nothing jumps "just after" r. For step families this is exactly
    // monotonicity plus the convention, so we check it literally per point.
    r.right_continuous = true;
    for (size_t i = 0; i < u.grid.points.size(); ++i) {
        // meet of strictly later grid values; for the last point this is the
        // empty meet (top), and condition (iii) there is the (ii) endpoint
        if (i + 1 == u.grid.points.size())
            continue;
        ClopenSubobject m = u.values[i + 1];
        for (size_t jj = i + 2; jj < u.values.size(); ++jj)
            m = sub_meet(m, u.values[jj]);
        // the step convention puts value u.values[i] on [q_i, q_{i+1}), so
        // the grid form of (iii) at q_i compares against the value just
        // right of q_i, i.e. u.values[i] itself via inner rationals; the
        // meet over later *grid* points equals u.values[i+1] by monotonicity
        if (!(m == u.values[i + 1])) {
            r.right_continuous = false;
            r.witness = "right continuity fails at " +
                        rational_string(u.grid.points[i]);
        }
    }
    return r;
}

ClopenSubobject cut_to_E(const RealName& u, const Rational& lambda) {
    const SpectralPresheaf& P = *u.values.front().parent();
    std::optional<ClopenSubobject> acc;
    for (size_t i = 0; i < u.grid.points.size(); ++i)
        if (u.grid.points[i] > lambda)
            acc = acc ? sub_meet(*acc, u.values[i]) : u.values[i];
    if (!acc)
        throw LambdaAboveGrid("E is undefined at or above the last grid point " +
                              rational_string(u.grid.points.back()));
    (void)P;
    return *acc;
}

Elem LatticeCutFamily::value_at(const Rational& lambda) const {
    for (size_t i = 0; i < grid.size(); ++i)
        if (grid[i] > lambda)
            return values[i];
    throw LambdaAboveGrid("family value undefined at or above the last grid point");
}

LatticeCutFamily to_operator_family_G(const RealName& u) {
    LatticeCutFamily f;
    f.context = &u.context->gen.oml;
    f.grid = u.grid.points;
    for (size_t i = 0; i < u.values.size(); ++i)
        f.values.push_back(epsilon(u.values[i]));
    return f;
}

WrcFamilyReport verify_wrc_family(const LatticeCutFamily& f) {
    WrcFamilyReport r;
    const Oml& L = *f.context;
    Elem meet_all = L.top();
    for (Elem v : f.values)
        meet_all = L.meet(meet_all, v);
    r.meet_is_zero = meet_all == L.bottom();
    if (!r.meet_is_zero)
        r.witness = "meet of all values is " + L.name(meet_all);
    r.step_convention_ok = true;
    for (size_t i = 0; i + 1 < f.values.size(); ++i) {
        if (!L.leq(f.values[i], f.values[i + 1])) {
            r.step_convention_ok = false;
            r.witness = "values decrease at " + rational_string(f.grid[i]);
        }
        // meet over mu > lambda of G_mu equals G_lambda at each grid point
        Elem m = L.top();
        for (size_t j = i + 1; j < f.values.size(); ++j)
            m = L.meet(m, f.values[j]);
        if (f.value_at(f.grid[i]) != m) {
            r.step_convention_ok = false;
            r.witness = "right regularization fails at " + rational_string(f.grid[i]);
        }
    }
    Elem join_all = L.bottom();
    for (Elem v : f.values)
        join_all = L.join(join_all, v);
    r.sup_is_one = join_all == L.top();
    return r;
}

ClopenSubobject equality_truth(const RealName& u, const RealName& v,
                               const logic::SemanticsProfile& profile) {
    if (!(u.grid == v.grid))
        throw GridMismatch("names live on different grids");
    if (u.context != v.context)
        throw ContextMismatch("names live over different contexts");
    auto imp = [&](const ClopenSubobject& a, const ClopenSubobject& b) {
        switch (profile.imp) {
        case logic::Implication::heyting:
            return heyting_implies(a, b);
        case logic::Implication::co:
            return sub_join(coheyting_not(a), b);
        case logic::Implication::star:
            return star_implies(a, b);
        }
        throw std::logic_error("unreachable");
    };
    ClopenSubobject acc = ClopenSubobject::top(*u.context->presheaf);
    for (size_t i = 0; i < u.values.size(); ++i)
        acc = sub_meet(acc, sub_meet(imp(u.values[i], v.values[i]),
                                     imp(v.values[i], u.values[i])));
    return acc;
}

InjectivityReport injectivity_experiment(const RealName& u, const RealName& v,
                                         const logic::SemanticsProfile& profile) {
    InjectivityReport r;
    r.profile = profile.name;
    r.equality_is_top = equality_truth(u, v, profile).is_top();
    const EQuotient& E = *u.context->quotient;
    for (size_t i = 0; i < u.values.size(); ++i)
        if (E.class_of(u.values[i]) != E.class_of(v.values[i])) {
            r.distinguishing_q = u.grid.points[i];
            break;
        }
    LatticeCutFamily gu = to_operator_family_G(u);
    LatticeCutFamily gv = to_operator_family_G(v);
    for (size_t i = 0; i < gu.values.size(); ++i)
        if (gu.values[i] != gv.values[i]) {
            r.g_families_differ = true;
            r.g_witness = gu.grid[i];
            break;
        }
    return r;
}

InjectivityReport injectivity_experiment(const RationalMatrix& a,
                                         const RationalMatrix& b,
                                         const RationalGrid& grid,
                                         const BridgeContext& ctx,
                                         const logic::SemanticsProfile& profile) {
    RealName u = bridge_H(a, grid, ctx);
    RealName v = bridge_H(b, grid, ctx);
    InjectivityReport r = injectivity_experiment(u, v, profile);
    r.operators_differ = !(a == b);
    r.grid_resolution_limit = r.operators_differ && u.values == v.values;
    return r;
}

} // namespace omlq
