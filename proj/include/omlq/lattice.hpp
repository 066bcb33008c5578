#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omlq/errors.hpp"

namespace omlq {

using Elem = int;

struct Caps {
    int max_lattice_size = 64;
    int max_subalgebras = 4096;
    long long max_subobject_combinations = 1LL << 20;
    int max_generated_oml = 64;
};

// Finite bounded lattice. Elements are opaque indices 0..n-1 with display
// names; all structure lives in explicit tables.
class Lattice {
public:
    // leq must be the full relation (reflexive/antisymmetric/transitive are
    // verified here). Throws NotAPoset / NotALattice with a witness.
    static Lattice from_order(std::vector<std::string> names,
                              std::vector<std::vector<bool>> leq);

    int size() const { return static_cast<int>(names_.size()); }
    bool leq(Elem a, Elem b) const { return leq_[a][b]; }
    Elem meet(Elem a, Elem b) const { return meet_[a][b]; }
    Elem join(Elem a, Elem b) const { return join_[a][b]; }
    Elem meet_all(const std::vector<Elem>& xs) const; // empty -> top
    Elem join_all(const std::vector<Elem>& xs) const; // empty -> bottom
    Elem bottom() const { return bottom_; }
    Elem top() const { return top_; }
    const std::string& name(Elem a) const { return names_[a]; }
    std::optional<Elem> index_of(const std::string& name) const;

private:
    Lattice() = default;
    std::vector<std::string> names_;
    std::vector<std::vector<bool>> leq_;
    std::vector<std::vector<Elem>> meet_, join_;
    Elem bottom_ = 0, top_ = 0;
};

// Orthomodular lattice: bounded lattice plus validated orthocomplement.
class Oml {
public:
    // Verifies the complement laws (involution, antitone, a v a' = 1,
    // a ^ a' = 0, De Morgan both ways) and the orthomodular law.
    // Throws OrthoLawViolation / NotOrthomodular with a witness.
    static Oml create(Lattice base, std::vector<Elem> ortho);

    const Lattice& base() const { return base_; }
    Elem ortho(Elem a) const { return ortho_[a]; }

    int size() const { return base_.size(); }
    bool leq(Elem a, Elem b) const { return base_.leq(a, b); }
    Elem meet(Elem a, Elem b) const { return base_.meet(a, b); }
    Elem join(Elem a, Elem b) const { return base_.join(a, b); }
    Elem meet_all(const std::vector<Elem>& xs) const { return base_.meet_all(xs); }
    Elem join_all(const std::vector<Elem>& xs) const { return base_.join_all(xs); }
    Elem bottom() const { return base_.bottom(); }
    Elem top() const { return base_.top(); }
    const std::string& name(Elem a) const { return base_.name(a); }
    std::optional<Elem> index_of(const std::string& n) const { return base_.index_of(n); }

private:
    Oml(Lattice base, std::vector<Elem> ortho)
        : base_(std::move(base)), ortho_(std::move(ortho)) {}
    Lattice base_;
    std::vector<Elem> ortho_;
};

struct LatticeSpec {
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> leq;
    // Optional; missing entries are inferred as unique complements when that
    // is unambiguous, otherwise OrthoLawViolation is thrown.
    std::vector<std::pair<std::string, std::string>> ortho;
};

Oml build_lattice(const LatticeSpec& spec, const Caps& caps = {});

// Powerset algebra on `atoms` atoms (1 <= atoms <= 16), ortho = complement.
Oml make_boolean(int atoms);

// Horizontal sum of `pairs` four-element blocks sharing 0 and 1 (the MO_n
// family): 2n+2 elements, orthomodular, non-distributive for n >= 2.
Oml make_mo(int pairs, const Caps& caps = {});

// Carrier is sorted ascending; contains bottom and top, closed under
// meet/join/ortho of the parent, and distributive on all triples.
struct BooleanSubalgebra {
    std::vector<Elem> carrier;
    bool contains(Elem a) const;
};

// All Boolean subalgebras ordered by inclusion; members sorted by
// (size, carrier) so the trivial subalgebra comes first.
struct SubalgebraPoset {
    std::vector<BooleanSubalgebra> members;
    std::vector<std::vector<bool>> leq; // inclusion
};

SubalgebraPoset enumerate_boolean_subalgebras(const Oml& L, const Caps& caps = {});

// Minimal nonzero elements of the carrier, ascending.
std::vector<Elem> atoms_of(const Oml& L, const BooleanSubalgebra& B);

bool is_distributive_subset(const Lattice& L, const std::vector<Elem>& carrier);

// Closure of `seed` under meet, join and ortho (bottom/top always included).
std::vector<Elem> subalgebra_closure(const Oml& L, const std::vector<Elem>& seed);

} // namespace omlq
