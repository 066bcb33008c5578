#include "omlq/presheaf.hpp"

#include <algorithm>

namespace omlq {

StoneSpace stone_space(const Oml& L, const BooleanSubalgebra& B) {
    StoneSpace s;
    s.atoms = atoms_of(L, B);
    return s;
}

bool point_value(const Oml& L, Elem atom, Elem b) {
    return L.leq(atom, b);
}

std::uint64_t stone_iso(const Oml& L, const BooleanSubalgebra& B, Elem b) {
    if (!B.contains(b))
        throw ElementNotInSubalgebra(L.name(b) + " is not in the subalgebra");
    std::vector<Elem> atoms = atoms_of(L, B);
    std::uint64_t mask = 0;
    for (size_t i = 0; i < atoms.size(); ++i)
        if (point_value(L, atoms[i], b))
            mask |= std::uint64_t(1) << i;
    return mask;
}

Elem stone_iso_inv(const Oml& L, const BooleanSubalgebra& B, std::uint64_t mask) {
    std::vector<Elem> atoms = atoms_of(L, B);
    std::vector<Elem> picked;
    for (size_t i = 0; i < atoms.size(); ++i)
        if ((mask >> i) & 1)
            picked.push_back(atoms[i]);
    return L.join_all(picked);
}

SpectralPresheaf SpectralPresheaf::build(const Oml& L, const Caps& caps) {
    SpectralPresheaf P(L);
    P.caps_ = caps;
    P.poset_ = enumerate_boolean_subalgebras(L, caps);
    const int m = static_cast<int>(P.poset_.members.size());
    for (int b = 0; b < m; ++b) {
        StoneSpace s = stone_space(P.oml_, P.poset_.members[b]);
        s.subalgebra = b;
        if (s.point_count() > 64)
            throw SizeCapExceeded("fiber with more than 64 points");
        P.fibers_.push_back(std::move(s));
    }
    for (int from = 0; from < m; ++from)
        for (int to = 0; to < m; ++to) {
            if (!P.poset_.leq[to][from])
                continue;
            const StoneSpace& big = P.fibers_[from];
            const StoneSpace& small = P.fibers_[to];
            std::vector<int> map(big.point_count(), -1);
            for (int p = 0; p < big.point_count(); ++p) {
                // lambda restricted to the smaller carrier is the hom picked
                // out by the unique atom of the smaller algebra above atoms[p]
                for (int q = 0; q < small.point_count(); ++q)
                    if (L.leq(big.atoms[p], small.atoms[q])) {
                        if (map[p] >= 0)
                            throw ValidationError("restriction not unique; subalgebra not Boolean?");
                        map[p] = q;
                    }
                if (map[p] < 0)
                    throw ValidationError("no restriction target; subalgebra not Boolean?");
            }
            P.restrictions_[{from, to}] = std::move(map);
        }
    // functoriality: composite along any chain agrees with the direct map
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                if (!(P.poset_.leq[c][b] && P.poset_.leq[b][a]))
                    continue;
                for (int p = 0; p < P.fibers_[a].point_count(); ++p)
                    if (P.restrict_point(b, c, P.restrict_point(a, b, p)) !=
                        P.restrict_point(a, c, p))
                        throw ValidationError("restriction maps are not functorial");
            }
    // cache the daseinisation subobjects (hot path for epsilon and star)
    P.delta_parts_.resize(L.size());
    for (Elem a = 0; a < L.size(); ++a) {
        std::vector<std::uint64_t> parts(m, 0);
        for (int b = 0; b < m; ++b) {
            const BooleanSubalgebra& B = P.poset_.members[b];
            std::vector<Elem> above;
            for (Elem x : B.carrier)
                if (L.leq(a, x))
                    above.push_back(x);
            Elem delta = L.meet_all(above);
            const StoneSpace& s = P.fibers_[b];
            for (int p = 0; p < s.point_count(); ++p)
                if (point_value(L, s.atoms[p], delta))
                    parts[b] |= std::uint64_t(1) << p;
        }
        P.delta_parts_[a] = std::move(parts);
    }
    return P;
}

int SpectralPresheaf::restrict_point(int from, int to, int p) const {
    auto it = restrictions_.find({from, to});
    if (it == restrictions_.end())
        throw ParentMismatch("no restriction map for the given subalgebra pair");
    return it->second[p];
}

namespace {

bool restriction_closed(const SpectralPresheaf& P,
                        const std::vector<std::uint64_t>& parts) {
    for (int from = 0; from < P.fiber_count(); ++from)
        for (int to = 0; to < P.fiber_count(); ++to) {
            if (to == from || !P.has_restriction(from, to))
                continue;
            for (int p = 0; p < P.fiber(from).point_count(); ++p)
                if ((parts[from] >> p) & 1) {
                    int q = P.restrict_point(from, to, p);
                    if (!((parts[to] >> q) & 1))
                        return false;
                }
        }
    return true;
}

void check_same_parent(const ClopenSubobject& s, const ClopenSubobject& t) {
    if (s.parent() != t.parent())
        throw ParentMismatch("subobjects live over different presheaves");
}

std::uint64_t full_mask(int bits) {
    return bits >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << bits) - 1;
}

} // namespace

ClopenSubobject::ClopenSubobject(const SpectralPresheaf& parent,
                                 std::vector<std::uint64_t> parts)
    : parent_(&parent), parts_(std::move(parts)) {
    if (static_cast<int>(parts_.size()) != parent.fiber_count())
        throw ValidationError("part family does not match the fiber count");
    for (int b = 0; b < parent.fiber_count(); ++b)
        if (parts_[b] & ~full_mask(parent.fiber(b).point_count()))
            throw ValidationError("part mask references points outside the fiber");
    if (!restriction_closed(parent, parts_))
        throw ValidationError("part family is not closed under restriction");
}

ClopenSubobject ClopenSubobject::bottom(const SpectralPresheaf& parent) {
    return ClopenSubobject(Unchecked{}, parent,
                           std::vector<std::uint64_t>(parent.fiber_count(), 0));
}

ClopenSubobject ClopenSubobject::top(const SpectralPresheaf& parent) {
    std::vector<std::uint64_t> parts(parent.fiber_count());
    for (int b = 0; b < parent.fiber_count(); ++b)
        parts[b] = full_mask(parent.fiber(b).point_count());
    return ClopenSubobject(Unchecked{}, parent, std::move(parts));
}

bool ClopenSubobject::is_bottom() const {
    for (std::uint64_t p : parts_)
        if (p)
            return false;
    return true;
}

bool ClopenSubobject::is_top() const {
    for (int b = 0; b < parent_->fiber_count(); ++b)
        if (parts_[b] != full_mask(parent_->fiber(b).point_count()))
            return false;
    return true;
}

ClopenSubobject sub_meet(const ClopenSubobject& s, const ClopenSubobject& t) {
    check_same_parent(s, t);
    std::vector<std::uint64_t> parts(s.parts());
    for (size_t b = 0; b < parts.size(); ++b)
        parts[b] &= t.part(static_cast<int>(b));
    return ClopenSubobject(ClopenSubobject::Unchecked{}, *s.parent(), std::move(parts));
}

ClopenSubobject sub_join(const ClopenSubobject& s, const ClopenSubobject& t) {
    check_same_parent(s, t);
    std::vector<std::uint64_t> parts(s.parts());
    for (size_t b = 0; b < parts.size(); ++b)
        parts[b] |= t.part(static_cast<int>(b));
    return ClopenSubobject(ClopenSubobject::Unchecked{}, *s.parent(), std::move(parts));
}

ClopenSubobject sub_meet_all(const SpectralPresheaf& parent,
                             const std::vector<ClopenSubobject>& xs) {
    ClopenSubobject acc = ClopenSubobject::top(parent);
    for (const auto& x : xs)
        acc = sub_meet(acc, x);
    return acc;
}

ClopenSubobject sub_join_all(const SpectralPresheaf& parent,
                             const std::vector<ClopenSubobject>& xs) {
    ClopenSubobject acc = ClopenSubobject::bottom(parent);
    for (const auto& x : xs)
        acc = sub_join(acc, x);
    return acc;
}

bool sub_leq(const ClopenSubobject& s, const ClopenSubobject& t) {
    check_same_parent(s, t);
    for (int b = 0; b < s.parent()->fiber_count(); ++b)
        if (s.part(b) & ~t.part(b))
            return false;
    return true;
}

ClopenSubobject heyting_implies(const ClopenSubobject& s, const ClopenSubobject& t) {
    check_same_parent(s, t);
    const SpectralPresheaf& P = *s.parent();
    std::vector<std::uint64_t> parts(P.fiber_count(), 0);
    for (int b = 0; b < P.fiber_count(); ++b)
        for (int p = 0; p < P.fiber(b).point_count(); ++p) {
            bool ok = true;
            for (int c = 0; c < P.fiber_count() && ok; ++c) {
                if (!P.has_restriction(b, c))
                    continue;
                int q = P.restrict_point(b, c, p);
                if (s.contains(c, q) && !t.contains(c, q))
                    ok = false;
            }
            if (ok)
                parts[b] |= std::uint64_t(1) << p;
        }
    return ClopenSubobject(ClopenSubobject::Unchecked{}, P, std::move(parts));
}

ClopenSubobject heyting_not(const ClopenSubobject& s) {
    return heyting_implies(s, ClopenSubobject::bottom(*s.parent()));
}

ClopenSubobject coheyting_minus(const ClopenSubobject& t, const ClopenSubobject& s) {
    check_same_parent(t, s);
    const SpectralPresheaf& P = *t.parent();
    std::vector<std::uint64_t> parts(P.fiber_count());
    for (int b = 0; b < P.fiber_count(); ++b)
        parts[b] = t.part(b) & ~s.part(b);
    // close under restriction (downward along inclusions)
    bool changed = true;
    while (changed) {
        changed = false;
        for (int from = 0; from < P.fiber_count(); ++from)
            for (int to = 0; to < P.fiber_count(); ++to) {
                if (to == from || !P.has_restriction(from, to))
                    continue;
                for (int p = 0; p < P.fiber(from).point_count(); ++p)
                    if ((parts[from] >> p) & 1) {
                        std::uint64_t bit = std::uint64_t(1)
                                            << P.restrict_point(from, to, p);
                        if (!(parts[to] & bit)) {
                            parts[to] |= bit;
                            changed = true;
                        }
                    }
            }
    }
    return ClopenSubobject(ClopenSubobject::Unchecked{}, P, std::move(parts));
}

ClopenSubobject coheyting_not(const ClopenSubobject& s) {
    return coheyting_minus(ClopenSubobject::top(*s.parent()), s);
}

std::vector<ClopenSubobject> enumerate_subobjects(const SpectralPresheaf& P) {
    long long combos = 1;
    for (int b = 0; b < P.fiber_count(); ++b) {
        combos *= (1LL << P.fiber(b).point_count());
        if (combos > P.caps().max_subobject_combinations)
            throw SizeCapExceeded("subobject space larger than the configured cap");
    }
    std::vector<ClopenSubobject> out;
    std::vector<std::uint64_t> parts(P.fiber_count(), 0);
    // odometer over per-fiber masks, fiber 0 fastest; order is canonical
    while (true) {
        if (restriction_closed(P, parts))
            out.emplace_back(P, parts);
        int b = 0;
        for (; b < P.fiber_count(); ++b) {
            if (parts[b] < full_mask(P.fiber(b).point_count())) {
                ++parts[b];
                break;
            }
            parts[b] = 0;
        }
        if (b == P.fiber_count())
            break;
    }
    return out;
}

} // namespace omlq
