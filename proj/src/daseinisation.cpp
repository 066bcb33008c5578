#include "omlq/daseinisation.hpp"

#include <stdexcept>

namespace omlq {

Elem daseinise_at(const Oml& L, Elem a, const BooleanSubalgebra& B) {
    std::vector<Elem> above;
    for (Elem b : B.carrier)
        if (L.leq(a, b))
            above.push_back(b);
    return L.meet_all(above); // nonempty: top is always in B
}

ClopenSubobject daseinise(const SpectralPresheaf& P, Elem a) {
    return ClopenSubobject(P, P.daseinisation_parts(a));
}

Elem epsilon(const ClopenSubobject& S) {
    const SpectralPresheaf& P = *S.parent();
    const Oml& L = P.oml();
    std::vector<Elem> below;
    for (Elem a = 0; a < L.size(); ++a) {
        const auto& parts = P.daseinisation_parts(a);
        bool leq = true;
        for (int b = 0; b < P.fiber_count() && leq; ++b)
            if (parts[b] & ~S.part(b))
                leq = false;
        if (leq)
            below.push_back(a);
    }
    return L.join_all(below);
}

ClopenSubobject star(const ClopenSubobject& S) {
    const SpectralPresheaf& P = *S.parent();
    return daseinise(P, P.oml().ortho(epsilon(S)));
}

ClopenSubobject star_implies(const ClopenSubobject& S, const ClopenSubobject& T) {
    return sub_join(star(S), T);
}

EQuotient::EQuotient(const SpectralPresheaf& P) : presheaf_(&P) {
    const Oml& L = P.oml();
    const int n = L.size();
    classes_.reserve(n);
    for (Elem a = 0; a < n; ++a)
        classes_.push_back(EpsilonClass{a, daseinise(P, a)});

    meet_.assign(n, std::vector<int>(n, -1));
    for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
            // meet of classes is the class of the meet of representatives
            int viaReps = epsilon(
                sub_meet(classes_[c].representative, classes_[d].representative));
            if (viaReps != L.meet(c, d))
                throw std::logic_error("class meet disagrees with lattice transport");
            meet_[c][d] = viaReps;
        }

    join_.assign(n, std::vector<int>(n, -1));
    for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
            // join = meet of all upper bounds in the quotient order
            std::vector<int> uppers;
            for (int t = 0; t < n; ++t)
                if (meet_[c][t] == c && meet_[d][t] == d)
                    uppers.push_back(t);
            int j = L.top();
            for (int t : uppers)
                j = meet_[j][t];
            if (j != L.join(c, d))
                throw std::logic_error("class join disagrees with lattice transport");
            join_[c][d] = j;
        }

    star_.resize(n);
    for (int c = 0; c < n; ++c)
        star_[c] = epsilon(star(classes_[c].representative));
}

int EQuotient::class_of(const ClopenSubobject& S) const {
    if (S.parent() != presheaf_)
        throw ParentMismatch("subobject lives over a different presheaf");
    return epsilon(S);
}

int EQuotient::top_class() const {
    return presheaf_->oml().top();
}

int EQuotient::bottom_class() const {
    return presheaf_->oml().bottom();
}

ClopenSubobject map_h(const EQuotient& E, int c) {
    return daseinise(E.presheaf(), E.iso_g(c));
}

Lemma32Report lemma_3_2_check(const SpectralPresheaf& P) {
    Lemma32Report report;
    for (const ClopenSubobject& S : enumerate_subobjects(P))
        if (epsilon(S) == P.oml().top())
            report.witnesses.push_back(S);
    report.singleton_top = report.witnesses.size() == 1 &&
                           report.witnesses.front().is_top();
    return report;
}

} // namespace omlq
