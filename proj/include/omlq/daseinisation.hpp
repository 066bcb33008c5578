#pragma once

#include <vector>

#include "omlq/presheaf.hpp"

namespace omlq {

// Least element of B above a.
Elem daseinise_at(const Oml& L, Elem a, const BooleanSubalgebra& B);

// The outer daseinisation subobject of a.
ClopenSubobject daseinise(const SpectralPresheaf& P, Elem a);

// Upper adjoint of daseinise: join of all a with delta(a) <= S.
Elem epsilon(const ClopenSubobject& S);

// S* = daseinisation of the orthocomplement of epsilon(S).
ClopenSubobject star(const ClopenSubobject& S);

// S => T under the * semantics: S* v T.
ClopenSubobject star_implies(const ClopenSubobject& S, const ClopenSubobject& T);

struct EpsilonClass {
    Elem epsilon_value;
    ClopenSubobject representative; // delta(epsilon_value)
};

// The quotient of the subobject algebra by "same epsilon value". There is
// exactly one class per lattice element, so class indices coincide with
// element ids. Meet/join tables are built from the class-level definitions
// (meet of representatives; join = meet of upper bounds) and cross-checked
// against transport through the lattice at construction time.
class EQuotient {
public:
    explicit EQuotient(const SpectralPresheaf& P);

    const SpectralPresheaf& presheaf() const { return *presheaf_; }
    int class_count() const { return static_cast<int>(classes_.size()); }
    const EpsilonClass& cls(int c) const { return classes_[c]; }

    int class_of(const ClopenSubobject& S) const;
    int iso_f(Elem a) const { return a; }
    Elem iso_g(int c) const { return classes_[c].epsilon_value; }

    int class_meet(int c, int d) const { return meet_[c][d]; }
    int class_join(int c, int d) const { return join_[c][d]; }
    bool class_leq(int c, int d) const { return class_meet(c, d) == c; }
    int class_star(int c) const { return star_[c]; }
    int top_class() const;
    int bottom_class() const;

private:
    const SpectralPresheaf* presheaf_;
    std::vector<EpsilonClass> classes_;
    std::vector<std::vector<int>> meet_, join_;
    std::vector<int> star_;
};

// h([S]) = delta(epsilon(S)).
ClopenSubobject map_h(const EQuotient& E, int c);

struct Lemma32Report {
    std::vector<ClopenSubobject> witnesses; // all S with epsilon(S) = 1
    bool singleton_top = false;
};

// Confirms that the only subobject with epsilon value 1 is top.
Lemma32Report lemma_3_2_check(const SpectralPresheaf& P);

} // namespace omlq
