#include "omlq/matrix.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace omlq {

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::diag(const std::vector<Rational>& d) {
    RationalMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i)
        m.at(i, i) = d[i];
    return m;
}

bool RationalMatrix::is_symmetric() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (at(i, j) != at(j, i))
                return false;
    return true;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix m(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            m.at(j, i) = at(i, j);
    return m;
}

Rational RationalMatrix::trace() const {
    Rational t = 0;
    for (int i = 0; i < n_; ++i)
        t += at(i, i);
    return t;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    RationalMatrix m(n_);
    for (size_t k = 0; k < e_.size(); ++k)
        m.e_[k] = e_[k] + o.e_[k];
    return m;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    RationalMatrix m(n_);
    for (size_t k = 0; k < e_.size(); ++k)
        m.e_[k] = e_[k] - o.e_[k];
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    RationalMatrix m(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const Rational& aik = at(i, k);
            if (aik == 0)
                continue;
            for (int j = 0; j < n_; ++j)
                m.at(i, j) += aik * o.at(k, j);
        }
    return m;
}

RationalMatrix RationalMatrix::scaled(const Rational& c) const {
    RationalMatrix m(n_);
    for (size_t k = 0; k < e_.size(); ++k)
        m.e_[k] = e_[k] * c;
    return m;
}

std::vector<Vec> rref(std::vector<Vec> rows) {
    if (rows.empty())
        return rows;
    const size_t n = rows[0].size();
    size_t pivot_row = 0;
    for (size_t col = 0; col < n && pivot_row < rows.size(); ++col) {
        size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col] == 0)
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[pivot_row], rows[sel]);
        Rational inv = Rational(1) / rows[pivot_row][col];
        for (size_t j = 0; j < n; ++j)
            rows[pivot_row][j] *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == 0)
                continue;
            Rational f = rows[r][col];
            for (size_t j = 0; j < n; ++j)
                rows[r][j] -= f * rows[pivot_row][j];
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

std::vector<Vec> nullspace_basis(const std::vector<Vec>& rows, int n) {
    std::vector<Vec> r = rref(rows);
    std::vector<int> pivot_col;
    for (const Vec& row : r) {
        int c = 0;
        while (c < n && row[c] == 0)
            ++c;
        pivot_col.push_back(c);
    }
    std::vector<Vec> basis;
    for (int free = 0; free < n; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end())
            continue;
        Vec v(n, Rational(0));
        v[free] = 1;
        for (size_t i = 0; i < r.size(); ++i)
            v[pivot_col[i]] = -r[i][free];
        basis.push_back(std::move(v));
    }
    return rref(std::move(basis));
}

namespace {

// Gauss-Jordan inverse of a small invertible matrix given as rows.
std::vector<Vec> invert(std::vector<Vec> m) {
    const size_t k = m.size();
    for (size_t i = 0; i < k; ++i) {
        Vec aug(k, Rational(0));
        aug[i] = 1;
        m[i].insert(m[i].end(), aug.begin(), aug.end());
    }
    for (size_t col = 0; col < k; ++col) {
        size_t sel = col;
        while (sel < k && m[sel][col] == 0)
            ++sel;
        if (sel == k)
            throw ValidationError("singular Gram matrix");
        std::swap(m[col], m[sel]);
        Rational inv = Rational(1) / m[col][col];
        for (Rational& x : m[col])
            x *= inv;
        for (size_t r = 0; r < k; ++r) {
            if (r == col || m[r][col] == 0)
                continue;
            Rational f = m[r][col];
            for (size_t j = 0; j < 2 * k; ++j)
                m[r][j] -= f * m[col][j];
        }
    }
    std::vector<Vec> out(k, Vec(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            out[i][j] = m[i][k + j];
    return out;
}

} // namespace

Projection Projection::from_matrix(const RationalMatrix& m) {
    if (!m.is_symmetric())
        throw NotHermitian("projection matrix is not symmetric");
    if (!(m * m == m))
        throw ValidationError("matrix is not idempotent");
    std::vector<Vec> rows;
    for (int i = 0; i < m.dim(); ++i) {
        Vec r(m.dim());
        for (int j = 0; j < m.dim(); ++j)
            r[j] = m.at(i, j);
        rows.push_back(std::move(r));
    }
    return Projection(m, rref(std::move(rows)));
}

Projection Projection::from_basis(int n, std::vector<Vec> rows) {
    std::vector<Vec> basis = rref(std::move(rows));
    const size_t k = basis.size();
    RationalMatrix p(n);
    if (k > 0) {
        // P = B' (B B')^{-1} B
        std::vector<Vec> gram(k, Vec(k, Rational(0)));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                for (int c = 0; c < n; ++c)
                    gram[i][j] += basis[i][c] * basis[j][c];
        std::vector<Vec> ginv = invert(std::move(gram));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Rational s = 0;
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = 0; j < k; ++j)
                        s += basis[i][a] * ginv[i][j] * basis[j][b];
                p.at(a, b) = s;
            }
    }
    return Projection(std::move(p), std::move(basis));
}

Projection Projection::zero(int n) {
    return Projection(RationalMatrix(n), {});
}

Projection Projection::identity(int n) {
    std::vector<Vec> rows(n, Vec(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        rows[i][i] = 1;
    return Projection(RationalMatrix::identity(n), std::move(rows));
}

bool Projection::operator<(const Projection& o) const {
    if (rank() != o.rank())
        return rank() < o.rank();
    return basis_ < o.basis_;
}

bool proj_leq(const Projection& a, const Projection& b) {
    // every basis row of a must reduce to zero against b's basis
    for (const Vec& row : a.basis()) {
        Vec v = row;
        for (const Vec& brow : b.basis()) {
            int pivot = 0;
            while (brow[pivot] == 0)
                ++pivot;
            if (v[pivot] != 0) {
                Rational f = v[pivot];
                for (size_t j = 0; j < v.size(); ++j)
                    v[j] -= f * brow[j];
            }
        }
        for (const Rational& x : v)
            if (x != 0)
                return false;
    }
    return true;
}

Projection proj_ortho(const Projection& a) {
    return Projection::from_basis(a.dim(), nullspace_basis(a.basis(), a.dim()));
}

Projection proj_join(const Projection& a, const Projection& b) {
    std::vector<Vec> rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return Projection::from_basis(a.dim(), std::move(rows));
}

Projection proj_meet(const Projection& a, const Projection& b) {
    return proj_ortho(proj_join(proj_ortho(a), proj_ortho(b)));
}

// Faddeev-LeVerrier recursion
std::vector<Rational> char_poly(const RationalMatrix& a) {
    const int n = a.dim();
    std::vector<Rational> c(n + 1);
    c[0] = 1;
    RationalMatrix m = a;
    c[1] = -m.trace();
    for (int k = 2; k <= n; ++k) {
        RationalMatrix shifted = m;
        for (int i = 0; i < n; ++i)
            shifted.at(i, i) += c[k - 1];
        m = a * shifted;
        c[k] = -m.trace() / k;
    }
    return c;
}

namespace {

std::vector<Int> divisors(Int m) {
    if (m < 0)
        m = -m;
    std::vector<Int> out;
    for (Int i = 1; i * i <= m; ++i)
        if (m % i == 0) {
            out.push_back(i);
            out.push_back(m / i);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rational eval_poly(const std::vector<Rational>& c, const Rational& x) {
    Rational v = 0;
    for (const Rational& ci : c)
        v = v * x + ci;
    return v;
}

std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& root) {
    std::vector<Rational> out(c.size() - 1);
    Rational carry = 0;
    for (size_t i = 0; i + 1 < c.size(); ++i) {
        carry = c[i] + carry * root;
        out[i] = carry;
    }
    return out;
}

std::string poly_string(const std::vector<Rational>& c) {
    std::string s;
    int deg = static_cast<int>(c.size()) - 1;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0 && i != c.size() - 1)
            continue;
        if (!s.empty())
            s += " + ";
        s += rational_string(c[i]);
        int p = deg - static_cast<int>(i);
        if (p > 0)
            s += "*x^" + std::to_string(p);
    }
    return s;
}

// All rational roots with multiplicity, or the unfactored remainder.
std::vector<Rational> rational_roots(std::vector<Rational> c) {
    std::vector<Rational> roots;
    while (c.size() > 1) {
        if (c.back() == 0) {
            roots.push_back(0);
            c.pop_back();
            continue;
        }
        Int scale = 1;
        for (const Rational& x : c)
            scale = boost::multiprecision::lcm(scale, denominator(x));
        Int lead = numerator(Rational(c.front() * scale));
        Int constant = numerator(Rational(c.back() * scale));
        bool found = false;
        for (const Int& p : divisors(constant)) {
            for (const Int& q : divisors(lead)) {
                for (int sign : {1, -1}) {
                    Rational cand(sign * p, q);
                    if (eval_poly(c, cand) == 0) {
                        roots.push_back(cand);
                        c = deflate(c, cand);
                        found = true;
                        break;
                    }
                }
                if (found)
                    break;
            }
            if (found)
                break;
        }
        if (!found)
            throw IrrationalSpectrum(
                "characteristic polynomial does not split over Q; remainder: " +
                poly_string(c));
    }
    return roots;
}

} // namespace

std::vector<std::pair<Rational, Projection>> eigendecompose(const RationalMatrix& a) {
    if (!a.is_symmetric())
        throw NotHermitian("matrix is not symmetric");
    const int n = a.dim();
    std::vector<Rational> roots = rational_roots(char_poly(a));
    std::vector<Rational> values = roots;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<std::pair<Rational, Projection>> out;
    for (const Rational& lambda : values) {
        RationalMatrix shifted = a;
        for (int i = 0; i < n; ++i)
            shifted.at(i, i) -= lambda;
        std::vector<Vec> rows(n, Vec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rows[i][j] = shifted.at(i, j);
        Projection p = Projection::from_basis(n, nullspace_basis(rows, n));
        out.emplace_back(lambda, std::move(p));
    }

    RationalMatrix sum(n), weighted(n);
    for (const auto& [lambda, p] : out) {
        sum = sum + p.matrix();
        weighted = weighted + p.matrix().scaled(lambda);
    }
    if (!(sum == RationalMatrix::identity(n)))
        throw ValidationError("eigenprojections do not resolve the identity");
    if (!(weighted == a))
        throw ValidationError("spectral reconstruction mismatch");
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (!(out[i].second.matrix() * out[j].second.matrix() ==
                  RationalMatrix(n)))
                throw ValidationError("eigenprojections are not orthogonal");
    return out;
}

Projection ProjectionFamily::value_at(const Rational& lambda) const {
    size_t i = 0;
    while (i < breakpoints.size() && breakpoints[i] < lambda)
        ++i;
    return steps[i];
}

ProjectionFamily spectral_family(
    const std::vector<std::pair<Rational, Projection>>& eigen) {
    if (eigen.empty())
        throw ValidationError("empty spectral decomposition");
    const int n = eigen.front().second.dim();
    ProjectionFamily f;
    Projection acc = Projection::zero(n);
    f.steps.push_back(acc);
    for (const auto& [lambda, p] : eigen) {
        f.breakpoints.push_back(lambda);
        acc = proj_join(acc, p);
        f.steps.push_back(acc);
    }
    return f;
}

ProjectionFamily spectral_family(const RationalMatrix& a) {
    return spectral_family(eigendecompose(a));
}

FamilyReport verify_family(const ProjectionFamily& f) {
    FamilyReport r;
    r.monotone = true;
    for (size_t i = 0; i + 1 < f.steps.size(); ++i)
        if (!proj_leq(f.steps[i], f.steps[i + 1])) {
            r.monotone = false;
            r.witness = "values decrease at step " + std::to_string(i);
        }
    const int n = f.steps.front().dim();
    r.bottom_is_zero = f.steps.front() == Projection::zero(n);
    if (!r.bottom_is_zero)
        r.witness = "value below the first breakpoint is not 0";
    r.top_is_identity = f.steps.back() == Projection::identity(n);
    if (!r.top_is_identity)
        r.witness = "value above the last breakpoint is not 1";
    // left continuity: at each breakpoint the value equals the value on the
    // interval just below (the step convention makes this structural)
    r.left_continuous = true;
    for (size_t i = 0; i < f.breakpoints.size(); ++i)
        if (!(f.value_at(f.breakpoints[i]) == f.steps[i])) {
            r.left_continuous = false;
            r.witness = "left continuity fails at breakpoint " +
                        rational_string(f.breakpoints[i]);
        }
    return r;
}

std::optional<Elem> GeneratedOml::find(const Projection& p) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == p)
            return static_cast<Elem>(i);
    return std::nullopt;
}

namespace {

std::string projection_name(const Projection& p) {
    if (p.rank() == 0)
        return "0";
    if (p.rank() == p.dim())
        return "1";
    std::string s;
    for (const Vec& row : p.basis()) {
        if (!s.empty())
            s += ";";
        std::string r;
        for (const Rational& x : row) {
            if (!r.empty())
                r += ",";
            r += rational_string(x);
        }
        s += r;
    }
    return "[" + s + "]";
}

} // namespace

GeneratedOml generate_oml(const std::vector<Projection>& generators,
                          const Caps& caps) {
    if (generators.empty())
        throw ValidationError("no generator projections given");
    const int n = generators.front().dim();
    for (const Projection& p : generators)
        if (p.dim() != n)
            throw ValidationError("generator projections have mixed dimensions");

    std::set<Projection> closed;
    closed.insert(Projection::zero(n));
    closed.insert(Projection::identity(n));
    for (const Projection& p : generators)
        closed.insert(p);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Projection> snapshot(closed.begin(), closed.end());
        for (const Projection& p : snapshot)
            if (closed.insert(proj_ortho(p)).second)
                grew = true;
        for (size_t i = 0; i < snapshot.size(); ++i)
            for (size_t j = i + 1; j < snapshot.size(); ++j) {
                if (closed.insert(proj_meet(snapshot[i], snapshot[j])).second)
                    grew = true;
                if (closed.insert(proj_join(snapshot[i], snapshot[j])).second)
                    grew = true;
            }
        if (static_cast<int>(closed.size()) > caps.max_generated_oml)
            throw SizeCapExceeded("projection closure exceeded cap; partial size " +
                                  std::to_string(closed.size()));
    }

    std::vector<Projection> elems(closed.begin(), closed.end());
    const int m = static_cast<int>(elems.size());
    std::vector<std::string> names(m);
    for (int i = 0; i < m; ++i)
        names[i] = projection_name(elems[i]);
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            leq[i][j] = proj_leq(elems[i], elems[j]);
    Lattice base = Lattice::from_order(std::move(names), std::move(leq));
    std::vector<Elem> ortho(m);
    for (int i = 0; i < m; ++i) {
        Projection o = proj_ortho(elems[i]);
        auto it = std::lower_bound(elems.begin(), elems.end(), o);
        ortho[i] = static_cast<Elem>(it - elems.begin());
    }
    return GeneratedOml{Oml::create(std::move(base), std::move(ortho)),
                        std::move(elems)};
}

} // namespace omlq
