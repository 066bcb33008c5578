#include "omlq/suites.hpp"

#include <algorithm>

namespace omlq::suites {

namespace {

std::string sub_string(const ClopenSubobject& S) {
    const SpectralPresheaf& P = *S.parent();
    std::string out = "(";
    for (int b = 0; b < P.fiber_count(); ++b) {
        if (b)
            out += ";";
        out += "{";
        bool first = true;
        for (int p = 0; p < P.fiber(b).point_count(); ++p)
            if (S.contains(b, p)) {
                if (!first)
                    out += ",";
                out += P.oml().name(P.fiber(b).atoms[p]);
                first = false;
            }
        out += "}";
    }
    return out + ")";
}

void require(SuiteResult& r, bool ok, const std::string& clause,
             const std::string& detail = "") {
    if (ok)
        r.passed.push_back(clause);
    else
        r.failures.push_back(clause + (detail.empty() ? "" : ": " + detail));
}

} // namespace

SuiteResult daseinisation_suite(const SpectralPresheaf& P) {
    SuiteResult r{"2.3", {}, {}};
    const Oml& L = P.oml();
    const int n = L.size();
    std::vector<ClopenSubobject> delta;
    for (Elem a = 0; a < n; ++a)
        delta.push_back(daseinise(P, a));

    bool injective = true;
    for (Elem a = 0; a < n && injective; ++a)
        for (Elem b = a + 1; b < n; ++b)
            if (delta[a] == delta[b])
                injective = false;
    require(r, injective, "(i) delta injective");

    bool joins = true;
    std::string jw;
    auto check_join = [&](const std::vector<Elem>& xs) {
        std::vector<ClopenSubobject> ds;
        for (Elem x : xs)
            ds.push_back(delta[x]);
        if (!(daseinise(P, L.join_all(xs)) == sub_join_all(P, ds))) {
            joins = false;
            jw = "family of size " + std::to_string(xs.size());
        }
    };
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            check_join({a, b});
    for (Elem a = 0; a < n; ++a)
        for (Elem b = a; b < n; ++b)
            for (Elem c = b; c < n; ++c)
                check_join({a, b, c});
    {
        std::vector<Elem> all(n);
        for (Elem a = 0; a < n; ++a)
            all[a] = a;
        check_join(all);
    }
    require(r, joins, "(ii) delta preserves joins (pairs, triples, full family)", jw);

    bool monotone = true;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (L.leq(a, b) && !sub_leq(delta[a], delta[b]))
                monotone = false;
    require(r, monotone, "(iii) delta monotone");

    require(r, delta[L.bottom()].is_bottom() && delta[L.top()].is_top(),
            "(iv) delta(0) = bottom and delta(1) = top");

    bool meets = true;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (!sub_leq(delta[L.meet(a, b)], sub_meet(delta[a], delta[b])))
                meets = false;
    require(r, meets, "(v) delta(a^b) <= delta(a)^delta(b)");
    return r;
}

SuiteResult epsilon_suite(const SpectralPresheaf& P) {
    SuiteResult r{"2.5", {}, {}};
    const Oml& L = P.oml();
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);
    std::vector<Elem> eps;
    for (const auto& S : subs)
        eps.push_back(epsilon(S));

    bool meet_pres = true;
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = 0; j < subs.size(); ++j)
            if (epsilon(sub_meet(subs[i], subs[j])) != L.meet(eps[i], eps[j]))
                meet_pres = false;
    require(r, meet_pres, "(i) epsilon preserves meets (all pairs)");

    bool monotone = true;
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = 0; j < subs.size(); ++j)
            if (sub_leq(subs[i], subs[j]) && !L.leq(eps[i], eps[j]))
                monotone = false;
    require(r, monotone, "(ii) epsilon monotone");

    bool section = true;
    for (Elem a = 0; a < L.size(); ++a)
        if (epsilon(daseinise(P, a)) != a)
            section = false;
    require(r, section, "(iii) epsilon(delta(a)) = a");

    bool interior = true;
    for (size_t i = 0; i < subs.size(); ++i)
        if (!sub_leq(daseinise(P, eps[i]), subs[i]))
            interior = false;
    require(r, interior, "(iv) delta(epsilon(S)) <= S");

    bool joins = true;
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = 0; j < subs.size(); ++j)
            if (!L.leq(L.join(eps[i], eps[j]), epsilon(sub_join(subs[i], subs[j]))))
                joins = false;
    require(r, joins, "(v) epsilon(S v T) >= epsilon(S) v epsilon(T)");

    bool adjunction = true;
    for (Elem a = 0; a < L.size(); ++a)
        for (size_t i = 0; i < subs.size(); ++i)
            if (sub_leq(daseinise(P, a), subs[i]) != L.leq(a, eps[i]))
                adjunction = false;
    require(r, adjunction, "adjunction: delta(a) <= S iff a <= epsilon(S)");
    return r;
}

SuiteResult quotient_iso_suite(const EQuotient& E) {
    SuiteResult r{"2.6", {}, {}};
    const Oml& L = E.presheaf().oml();
    const int n = L.size();

    bool gf = true;
    for (Elem a = 0; a < n; ++a)
        if (E.iso_g(E.iso_f(a)) != a)
            gf = false;
    require(r, gf, "g(f(a)) = a for all a");

    bool fg = true;
    for (int c = 0; c < E.class_count(); ++c)
        if (E.iso_f(E.iso_g(c)) != c ||
            E.class_of(E.cls(c).representative) != c)
            fg = false;
    require(r, fg, "f(g([S])) = [S] for all classes");

    bool ops = true;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            if (E.iso_f(L.meet(a, b)) != E.class_meet(E.iso_f(a), E.iso_f(b)))
                ops = false;
            if (E.iso_f(L.join(a, b)) != E.class_join(E.iso_f(a), E.iso_f(b)))
                ops = false;
            if (L.leq(a, b) != E.class_leq(E.iso_f(a), E.iso_f(b)))
                ops = false;
        }
    require(r, ops, "f and g preserve meet, join and order");

    bool star_transport = true;
    for (Elem a = 0; a < n; ++a)
        if (E.class_star(E.iso_f(a)) != E.iso_f(L.ortho(a)))
            star_transport = false;
    require(r, star_transport, "f(a)* = f(a') (orthocomplement transport)");
    return r;
}

SuiteResult map_h_suite(const EQuotient& E) {
    SuiteResult r{"3.1", {}, {}};
    const int n = E.class_count();

    bool eps_pres = true;
    for (int c = 0; c < n; ++c)
        if (epsilon(map_h(E, c)) != E.iso_g(c))
            eps_pres = false;
    require(r, eps_pres, "(i) epsilon(h([S])) = epsilon(S)");

    bool joins = true;
    for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
            if (!(map_h(E, E.class_join(c, d)) == sub_join(map_h(E, c), map_h(E, d))))
                joins = false;
    require(r, joins, "(ii) h preserves joins (all class pairs)");

    bool injective = true;
    for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
            if (map_h(E, c) == map_h(E, d))
                injective = false;
    require(r, injective, "(iii) h injective (all class pairs)");
    return r;
}

SuiteResult top_class_suite(const SpectralPresheaf& P) {
    SuiteResult r{"3.2", {}, {}};
    Lemma32Report report = lemma_3_2_check(P);
    require(r, report.singleton_top,
            "[top] = {top}: the only S with epsilon(S) = 1 is top",
            std::to_string(report.witnesses.size()) + " witnesses found");
    return r;
}

SuiteResult star_suite(const SpectralPresheaf& P) {
    SuiteResult r{"4.2", {}, {}};
    const Oml& L = P.oml();
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);
    std::vector<ClopenSubobject> stars;
    for (const auto& S : subs)
        stars.push_back(star(S));

    bool i_ok = true, ii_ok = true, iii_ok = true, vii_ok = true, viii_ok = true;
    for (size_t i = 0; i < subs.size(); ++i) {
        if (!sub_join(subs[i], stars[i]).is_top())
            i_ok = false;
        ClopenSubobject ss = star(stars[i]);
        if (!sub_leq(ss, subs[i]))
            ii_ok = false;
        if (!(star(ss) == stars[i]))
            iii_ok = false;
        if (L.join(epsilon(subs[i]), epsilon(stars[i])) != L.top())
            vii_ok = false;
        if (L.meet(epsilon(subs[i]), epsilon(stars[i])) != L.bottom())
            viii_ok = false;
    }
    require(r, i_ok, "(i) S v S* = top");
    require(r, ii_ok, "(ii) S** <= S");
    require(r, iii_ok, "(iii) S*** = S*");

    // (iv) is trivially >=; the content is that strictness can occur
    std::string strict_witness;
    for (size_t i = 0; i < subs.size(); ++i)
        if (!sub_meet(subs[i], stars[i]).is_bottom()) {
            strict_witness = sub_string(subs[i]);
            break;
        }
    require(r, true, "(iv) S ^ S* >= bottom" +
                         (strict_witness.empty()
                              ? std::string("; no strict witness on this lattice")
                              : "; strict witness " + strict_witness));

    bool v_ok = true, vi_ok = true, ix_ok = true;
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = 0; j < subs.size(); ++j) {
            if (!(star(sub_meet(subs[i], subs[j])) == sub_join(stars[i], stars[j])))
                v_ok = false;
            if (!sub_leq(star(sub_join(subs[i], subs[j])),
                         sub_meet(stars[i], stars[j])))
                vi_ok = false;
            if (sub_leq(subs[i], subs[j]) && !sub_leq(stars[j], stars[i]))
                ix_ok = false;
        }
    require(r, v_ok, "(v) (S^T)* = S* v T*");
    require(r, vi_ok, "(vi) (SvT)* <= S* ^ T*");
    require(r, vii_ok, "(vii) epsilon(S) v epsilon(S*) = 1");
    require(r, viii_ok, "(viii) epsilon(S) ^ epsilon(S*) = 0");
    require(r, ix_ok, "(ix) S <= T implies S* >= T*");
    return r;
}

SuiteResult negative_results_suite(const EQuotient& E) {
    SuiteResult r{"negative", {}, {}};
    const SpectralPresheaf& P = E.presheaf();
    std::vector<ClopenSubobject> subs = enumerate_subobjects(P);

    std::string lem;
    for (const auto& S : subs)
        if (!sub_join(heyting_not(S), S).is_top()) {
            lem = sub_string(S);
            break;
        }
    require(r, true, lem.empty()
                         ? "Heyting LEM: no failure (searched " +
                               std::to_string(subs.size()) + " subobjects)"
                         : "Heyting LEM fails at S = " + lem);

    std::string class_lem;
    for (const auto& S : subs) {
        int c = E.class_of(S);
        int nc = E.class_of(coheyting_not(S));
        if (E.class_join(c, nc) != E.top_class()) {
            class_lem = sub_string(S);
            break;
        }
    }
    require(r, true, class_lem.empty()
                         ? "class-level [~S] v [S] = [top]: no failure (searched " +
                               std::to_string(subs.size()) + " subobjects)"
                         : "class-level LEM fails at S = " + class_lem);

    std::string join_witness;
    long long searched = 0;
    for (size_t i = 0; i < subs.size() && join_witness.empty(); ++i)
        for (size_t j = 0; j < subs.size(); ++j) {
            ++searched;
            Elem lhs = epsilon(sub_join(subs[i], subs[j]));
            Elem rhs = P.oml().join(epsilon(subs[i]), epsilon(subs[j]));
            if (lhs != rhs) {
                join_witness = sub_string(subs[i]) + ", " + sub_string(subs[j]);
                break;
            }
        }
    require(r, true,
            join_witness.empty()
                ? "epsilon join preservation: no witness (searched " +
                      std::to_string(searched) + " pairs)"
                : "epsilon does not preserve joins: witness " + join_witness);
    return r;
}

std::vector<SuiteResult> run_suites(const EQuotient& E, const std::string& which) {
    const SpectralPresheaf& P = E.presheaf();
    std::vector<SuiteResult> out;
    auto want = [&](const std::string& id) { return which == "all" || which == id; };
    if (want("2.3"))
        out.push_back(daseinisation_suite(P));
    if (want("2.5"))
        out.push_back(epsilon_suite(P));
    if (want("2.6"))
        out.push_back(quotient_iso_suite(E));
    if (want("3.1"))
        out.push_back(map_h_suite(E));
    if (want("3.2"))
        out.push_back(top_class_suite(P));
    if (want("4.2"))
        out.push_back(star_suite(P));
    if (which == "all" || which == "negative")
        out.push_back(negative_results_suite(E));
    if (out.empty())
        throw ParseError("unknown suite id '" + which + "'");
    return out;
}

} // namespace omlq::suites
