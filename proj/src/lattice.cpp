#include "omlq/lattice.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace omlq {

Lattice Lattice::from_order(std::vector<std::string> names,
                            std::vector<std::vector<bool>> leq) {
    const int n = static_cast<int>(names.size());
    if (n == 0)
        throw NotALattice("empty element list");
    for (int a = 0; a < n; ++a)
        if (!leq[a][a])
            throw NotAPoset("leq not reflexive at " + names[a]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a != b && leq[a][b] && leq[b][a])
                throw NotAPoset("leq not antisymmetric: " + names[a] + ", " + names[b]);
            if (leq[a][b])
                for (int c = 0; c < n; ++c)
                    if (leq[b][c] && !leq[a][c])
                        throw NotAPoset("leq not transitive through " + names[b]);
        }

    Lattice L;
    L.names_ = std::move(names);
    L.leq_ = std::move(leq);
    L.meet_.assign(n, std::vector<Elem>(n, -1));
    L.join_.assign(n, std::vector<Elem>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Elem glb = -1, lub = -1;
            for (int x = 0; x < n; ++x) {
                if (L.leq_[x][a] && L.leq_[x][b] && (glb < 0 || L.leq_[glb][x]))
                    glb = x;
                if (L.leq_[a][x] && L.leq_[b][x] && (lub < 0 || L.leq_[x][lub]))
                    lub = x;
            }
            // Candidate found greedily; confirm it really bounds every other.
            if (glb >= 0)
                for (int x = 0; x < n; ++x)
                    if (L.leq_[x][a] && L.leq_[x][b] && !L.leq_[x][glb])
                        glb = -1;
            if (lub >= 0)
                for (int x = 0; x < n; ++x)
                    if (L.leq_[a][x] && L.leq_[b][x] && !L.leq_[lub][x])
                        lub = -1;
            if (glb < 0)
                throw NotALattice("no greatest lower bound for " + L.names_[a] +
                                  ", " + L.names_[b]);
            if (lub < 0)
                throw NotALattice("no least upper bound for " + L.names_[a] +
                                  ", " + L.names_[b]);
            L.meet_[a][b] = glb;
            L.join_[a][b] = lub;
        }
    L.bottom_ = 0;
    L.top_ = 0;
    for (int a = 0; a < n; ++a) {
        if (L.leq_[a][L.bottom_])
            L.bottom_ = a;
        if (L.leq_[L.top_][a])
            L.top_ = a;
    }
    for (int a = 0; a < n; ++a) {
        if (!L.leq_[L.bottom_][a])
            throw NotALattice("no bottom element");
        if (!L.leq_[a][L.top_])
            throw NotALattice("no top element");
    }
    return L;
}

Elem Lattice::meet_all(const std::vector<Elem>& xs) const {
    Elem acc = top_;
    for (Elem x : xs)
        acc = meet_[acc][x];
    return acc;
}

Elem Lattice::join_all(const std::vector<Elem>& xs) const {
    Elem acc = bottom_;
    for (Elem x : xs)
        acc = join_[acc][x];
    return acc;
}

std::optional<Elem> Lattice::index_of(const std::string& name) const {
    for (int a = 0; a < size(); ++a)
        if (names_[a] == name)
            return a;
    return std::nullopt;
}

Oml Oml::create(Lattice base, std::vector<Elem> ortho) {
    const int n = base.size();
    if (static_cast<int>(ortho.size()) != n)
        throw OrthoLawViolation("ortho map does not cover all elements");
    for (int a = 0; a < n; ++a) {
        Elem ap = ortho[a];
        if (ap < 0 || ap >= n)
            throw OrthoLawViolation("ortho out of range at " + base.name(a));
        if (base.join(a, ap) != base.top())
            throw OrthoLawViolation(base.name(a) + " v " + base.name(ap) + " != 1");
        if (base.meet(a, ap) != base.bottom())
            throw OrthoLawViolation(base.name(a) + " ^ " + base.name(ap) + " != 0");
        if (ortho[ap] != a)
            throw OrthoLawViolation("ortho not involutive at " + base.name(a));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (base.leq(a, b) && !base.leq(ortho[b], ortho[a]))
                throw OrthoLawViolation("ortho not antitone on " + base.name(a) +
                                        " <= " + base.name(b));
            if (ortho[base.meet(a, b)] != base.join(ortho[a], ortho[b]))
                throw OrthoLawViolation("De Morgan (meet) fails on " + base.name(a) +
                                        ", " + base.name(b));
            if (ortho[base.join(a, b)] != base.meet(ortho[a], ortho[b]))
                throw OrthoLawViolation("De Morgan (join) fails on " + base.name(a) +
                                        ", " + base.name(b));
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (base.leq(a, b) && base.join(a, base.meet(b, ortho[a])) != b)
                throw NotOrthomodular("orthomodular law fails for " + base.name(a) +
                                      " <= " + base.name(b));
    return Oml(std::move(base), std::move(ortho));
}

Oml build_lattice(const LatticeSpec& spec, const Caps& caps) {
    const int n = static_cast<int>(spec.elements.size());
    if (n > caps.max_lattice_size)
        throw SizeCapExceeded("lattice has " + std::to_string(n) +
                              " elements, cap is " +
                              std::to_string(caps.max_lattice_size));
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) {
        if (index.count(spec.elements[i]))
            throw ParseError("duplicate element id " + spec.elements[i]);
        index[spec.elements[i]] = i;
    }
    auto lookup = [&](const std::string& id) {
        auto it = index.find(id);
        if (it == index.end())
            throw ParseError("unknown element id " + id);
        return it->second;
    };

    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        leq[i][i] = true;
    for (const auto& [lo, hi] : spec.leq)
        leq[lookup(lo)][lookup(hi)] = true;
    // transitive closure
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (leq[i][k])
                for (int j = 0; j < n; ++j)
                    if (leq[k][j])
                        leq[i][j] = true;

    Lattice base = Lattice::from_order(spec.elements, leq);

    std::vector<Elem> ortho(n, -1);
    for (const auto& [a, b] : spec.ortho) {
        Elem x = lookup(a), y = lookup(b);
        if ((ortho[x] >= 0 && ortho[x] != y) || (ortho[y] >= 0 && ortho[y] != x))
            throw OrthoLawViolation("conflicting ortho pairs at " + a);
        ortho[x] = y;
        ortho[y] = x;
    }
    ortho[base.bottom()] = base.top();
    ortho[base.top()] = base.bottom();
    for (int a = 0; a < n; ++a) {
        if (ortho[a] >= 0)
            continue;
        Elem found = -1;
        for (int x = 0; x < n; ++x)
            if (base.join(a, x) == base.top() && base.meet(a, x) == base.bottom()) {
                if (found >= 0)
                    throw OrthoLawViolation("complement of " + base.name(a) +
                                            " is not unique; give an explicit ortho map");
                found = x;
            }
        if (found < 0)
            throw OrthoLawViolation(base.name(a) + " has no complement");
        ortho[a] = found;
    }
    return Oml::create(std::move(base), std::move(ortho));
}

Oml make_boolean(int atoms) {
    if (atoms < 1 || atoms > 16)
        throw SizeCapExceeded("atom count must be between 1 and 16, got " +
                              std::to_string(atoms));
    const int n = 1 << atoms;
    std::vector<std::string> names(n);
    for (int m = 0; m < n; ++m) {
        std::string s;
        for (int i = atoms - 1; i >= 0; --i)
            s += ((m >> i) & 1) ? '1' : '0';
        names[m] = s;
    }
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            leq[a][b] = (a & b) == a;
    Lattice base = Lattice::from_order(std::move(names), std::move(leq));
    std::vector<Elem> ortho(n);
    for (int a = 0; a < n; ++a)
        ortho[a] = (n - 1) & ~a;
    return Oml::create(std::move(base), std::move(ortho));
}

Oml make_mo(int pairs, const Caps& caps) {
    if (pairs < 1)
        throw ParseError("MO_n needs n >= 1");
    const int n = 2 * pairs + 2;
    if (n > caps.max_lattice_size)
        throw SizeCapExceeded("MO_" + std::to_string(pairs) + " has " +
                              std::to_string(n) + " elements, cap is " +
                              std::to_string(caps.max_lattice_size));
    // element 0 = bottom, 2i+1/2i+2 = i-th complementary pair, n-1 = top
    std::vector<std::string> names(n);
    names[0] = "0";
    names[n - 1] = "1";
    for (int i = 0; i < pairs; ++i) {
        std::string a = "a" + std::to_string(i + 1);
        names[2 * i + 1] = a;
        names[2 * i + 2] = a + "'";
    }
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
        leq[a][a] = true;
        leq[0][a] = true;
        leq[a][n - 1] = true;
    }
    Lattice base = Lattice::from_order(std::move(names), std::move(leq));
    std::vector<Elem> ortho(n);
    ortho[0] = n - 1;
    ortho[n - 1] = 0;
    for (int i = 0; i < pairs; ++i) {
        ortho[2 * i + 1] = 2 * i + 2;
        ortho[2 * i + 2] = 2 * i + 1;
    }
    return Oml::create(std::move(base), std::move(ortho));
}

bool BooleanSubalgebra::contains(Elem a) const {
    return std::binary_search(carrier.begin(), carrier.end(), a);
}

bool is_distributive_subset(const Lattice& L, const std::vector<Elem>& carrier) {
    for (Elem x : carrier)
        for (Elem y : carrier)
            for (Elem z : carrier)
                if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z)))
                    return false;
    return true;
}

std::vector<Elem> subalgebra_closure(const Oml& L, const std::vector<Elem>& seed) {
    std::vector<bool> in(L.size(), false);
    std::vector<Elem> members;
    auto add = [&](Elem x) {
        if (!in[x]) {
            in[x] = true;
            members.push_back(x);
        }
    };
    add(L.bottom());
    add(L.top());
    for (Elem x : seed)
        add(x);
    for (size_t i = 0; i < members.size(); ++i) {
        add(L.ortho(members[i]));
        for (size_t j = 0; j <= i; ++j) {
            add(L.meet(members[i], members[j]));
            add(L.join(members[i], members[j]));
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

SubalgebraPoset enumerate_boolean_subalgebras(const Oml& L, const Caps& caps) {
    if (L.size() > caps.max_lattice_size)
        throw SizeCapExceeded("lattice has " + std::to_string(L.size()) +
                              " elements, cap is " +
                              std::to_string(caps.max_lattice_size));
    // BFS over the closure system: every closed subset is reached from the
    // trivial one by adding a single generator at a time and re-closing.
    std::set<std::vector<Elem>> seen;
    std::queue<std::vector<Elem>> work;
    std::vector<Elem> trivial = subalgebra_closure(L, {});
    seen.insert(trivial);
    work.push(trivial);
    while (!work.empty()) {
        std::vector<Elem> cur = std::move(work.front());
        work.pop();
        for (Elem x = 0; x < L.size(); ++x) {
            if (std::binary_search(cur.begin(), cur.end(), x))
                continue;
            std::vector<Elem> gen = cur;
            gen.push_back(x);
            std::vector<Elem> closed = subalgebra_closure(L, gen);
            if (seen.insert(closed).second) {
                if (static_cast<int>(seen.size()) > caps.max_subalgebras)
                    throw SizeCapExceeded("more than " +
                                          std::to_string(caps.max_subalgebras) +
                                          " closed subsets");
                work.push(std::move(closed));
            }
        }
    }

    SubalgebraPoset poset;
    for (const auto& carrier : seen)
        if (is_distributive_subset(L.base(), carrier))
            poset.members.push_back(BooleanSubalgebra{carrier});
    std::sort(poset.members.begin(), poset.members.end(),
              [](const BooleanSubalgebra& a, const BooleanSubalgebra& b) {
                  if (a.carrier.size() != b.carrier.size())
                      return a.carrier.size() < b.carrier.size();
                  return a.carrier < b.carrier;
              });
    const int m = static_cast<int>(poset.members.size());
    poset.leq.assign(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            poset.leq[i][j] = std::includes(poset.members[j].carrier.begin(),
                                            poset.members[j].carrier.end(),
                                            poset.members[i].carrier.begin(),
                                            poset.members[i].carrier.end());
    return poset;
}

std::vector<Elem> atoms_of(const Oml& L, const BooleanSubalgebra& B) {
    std::vector<Elem> atoms;
    for (Elem a : B.carrier) {
        if (a == L.bottom())
            continue;
        bool minimal = true;
        for (Elem b : B.carrier)
            if (b != L.bottom() && b != a && L.leq(b, a))
                minimal = false;
        if (minimal)
            atoms.push_back(a);
    }
    return atoms;
}

} // namespace omlq
