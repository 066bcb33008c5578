#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "omlq/lattice.hpp"

namespace omlq {

// Stone space of a finite Boolean subalgebra. Every homomorphism into {0,1}
// is determined by the unique atom it maps to 1, so points are stored as
// atoms (ascending element id gives the canonical point order). Finite Stone
// spaces carry the discrete topology: every subset is clopen, which is why
// no separate topological check appears anywhere below.
struct StoneSpace {
    int subalgebra = -1; // index into the poset, -1 when standalone
    std::vector<Elem> atoms;
    int point_count() const { return static_cast<int>(atoms.size()); }
};

StoneSpace stone_space(const Oml& L, const BooleanSubalgebra& B);

// lambda(b) for the point determined by `atom`: 1 iff atom <= b.
bool point_value(const Oml& L, Elem atom, Elem b);

// Stone isomorphism phi(b) = { lambda | lambda(b) = 1 } as a point bitmask,
// and its inverse (join of the atoms picked out by the mask).
std::uint64_t stone_iso(const Oml& L, const BooleanSubalgebra& B, Elem b);
Elem stone_iso_inv(const Oml& L, const BooleanSubalgebra& B, std::uint64_t mask);

// The spectral presheaf: one Stone space per Boolean subalgebra, with the
// restriction maps along inclusions stored explicitly. Immutable once built.
class SpectralPresheaf {
public:
    static SpectralPresheaf build(const Oml& L, const Caps& caps = {});

    const Oml& oml() const { return oml_; }
    const SubalgebraPoset& poset() const { return poset_; }
    const Caps& caps() const { return caps_; }
    int fiber_count() const { return static_cast<int>(fibers_.size()); }
    const StoneSpace& fiber(int b) const { return fibers_[b]; }

    bool has_restriction(int from, int to) const { return poset_.leq[to][from]; }
    // Point index in fiber(to) of the restriction of point p of fiber(from).
    int restrict_point(int from, int to, int p) const;

    // Cached daseinisation masks: parts[b] of the subobject delta(a).
    const std::vector<std::uint64_t>& daseinisation_parts(Elem a) const {
        return delta_parts_[a];
    }

    SpectralPresheaf(const SpectralPresheaf&) = delete;
    SpectralPresheaf& operator=(const SpectralPresheaf&) = delete;
    SpectralPresheaf(SpectralPresheaf&&) = default;

private:
    explicit SpectralPresheaf(Oml l) : oml_(std::move(l)) {}
    Oml oml_;
    Caps caps_;
    SubalgebraPoset poset_;
    std::vector<StoneSpace> fibers_;
    // keyed by (from, to) with to included in from
    std::map<std::pair<int, int>, std::vector<int>> restrictions_;
    std::vector<std::vector<std::uint64_t>> delta_parts_;
};

// A clopen subobject: one subset of points (bitmask) per fiber, closed under
// restriction. The constructor rejects families that are not closed.
class ClopenSubobject {
public:
    ClopenSubobject(const SpectralPresheaf& parent, std::vector<std::uint64_t> parts);
    static ClopenSubobject bottom(const SpectralPresheaf& parent);
    static ClopenSubobject top(const SpectralPresheaf& parent);

    const SpectralPresheaf* parent() const { return parent_; }
    std::uint64_t part(int b) const { return parts_[b]; }
    const std::vector<std::uint64_t>& parts() const { return parts_; }
    bool contains(int b, int point) const { return (parts_[b] >> point) & 1; }

    bool operator==(const ClopenSubobject& o) const {
        return parent_ == o.parent_ && parts_ == o.parts_;
    }
    bool operator!=(const ClopenSubobject& o) const { return !(*this == o); }

    bool is_bottom() const;
    bool is_top() const;

private:
    struct Unchecked {};
    ClopenSubobject(Unchecked, const SpectralPresheaf& parent,
                    std::vector<std::uint64_t> parts)
        : parent_(&parent), parts_(std::move(parts)) {}
    const SpectralPresheaf* parent_;
    std::vector<std::uint64_t> parts_;
    friend ClopenSubobject sub_meet(const ClopenSubobject&, const ClopenSubobject&);
    friend ClopenSubobject sub_join(const ClopenSubobject&, const ClopenSubobject&);
    friend ClopenSubobject heyting_implies(const ClopenSubobject&, const ClopenSubobject&);
    friend ClopenSubobject coheyting_minus(const ClopenSubobject&, const ClopenSubobject&);
};

ClopenSubobject sub_meet(const ClopenSubobject& s, const ClopenSubobject& t);
ClopenSubobject sub_join(const ClopenSubobject& s, const ClopenSubobject& t);
ClopenSubobject sub_meet_all(const SpectralPresheaf& parent,
                             const std::vector<ClopenSubobject>& xs);
ClopenSubobject sub_join_all(const SpectralPresheaf& parent,
                             const std::vector<ClopenSubobject>& xs);
bool sub_leq(const ClopenSubobject& s, const ClopenSubobject& t);

// Heyting residual: the largest R with S ^ R <= T, computed fiberwise as
// (S => T)_B = { lambda | every restriction of lambda lands in S only where
// it also lands in T }.
ClopenSubobject heyting_implies(const ClopenSubobject& s, const ClopenSubobject& t);
ClopenSubobject heyting_not(const ClopenSubobject& s);

// co-Heyting subtraction: the smallest R with T <= S v R, computed as the
// restriction closure of the fiberwise difference T \ S.
ClopenSubobject coheyting_minus(const ClopenSubobject& t, const ClopenSubobject& s);
ClopenSubobject coheyting_not(const ClopenSubobject& s);

// All restriction-closed families, in a canonical deterministic order.
std::vector<ClopenSubobject> enumerate_subobjects(const SpectralPresheaf& P);

} // namespace omlq
