#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omlq/lattice.hpp"
#include "omlq/rational.hpp"

namespace omlq {

// Square matrix over the rationals, row-major. All arithmetic is exact.
class RationalMatrix {
public:
    explicit RationalMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}
    static RationalMatrix identity(int n);
    static RationalMatrix diag(const std::vector<Rational>& d);

    int dim() const { return n_; }
    Rational& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
    const Rational& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    bool is_symmetric() const;
    RationalMatrix transpose() const;
    Rational trace() const;

    bool operator==(const RationalMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }
    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix scaled(const Rational& c) const;

private:
    int n_;
    std::vector<Rational> e_;
};

using Vec = std::vector<Rational>;

// Reduced row echelon form with zero rows dropped; this is the canonical
// basis of the row space, so two subspaces are equal iff their rref bases
// compare equal.
std::vector<Vec> rref(std::vector<Vec> rows);
std::vector<Vec> nullspace_basis(const std::vector<Vec>& rows, int n);

// Orthogonal projection, stored with the canonical basis of its range.
class Projection {
public:
    static Projection from_matrix(const RationalMatrix& m); // checks P'=P, P²=P
    static Projection from_basis(int n, std::vector<Vec> rows);
    static Projection zero(int n);
    static Projection identity(int n);

    const RationalMatrix& matrix() const { return matrix_; }
    const std::vector<Vec>& basis() const { return basis_; }
    int dim() const { return matrix_.dim(); }
    int rank() const { return static_cast<int>(basis_.size()); }

    bool operator==(const Projection& o) const { return basis_ == o.basis_; }
    bool operator!=(const Projection& o) const { return !(*this == o); }
    bool operator<(const Projection& o) const; // canonical order for closures

private:
    Projection(RationalMatrix m, std::vector<Vec> b)
        : matrix_(std::move(m)), basis_(std::move(b)) {}
    RationalMatrix matrix_;
    std::vector<Vec> basis_;
};

bool proj_leq(const Projection& a, const Projection& b); // range containment
Projection proj_ortho(const Projection& a);
Projection proj_join(const Projection& a, const Projection& b); // span sum
Projection proj_meet(const Projection& a, const Projection& b); // intersection

// Characteristic polynomial coefficients [1, c1, ..., cn], descending powers.
std::vector<Rational> char_poly(const RationalMatrix& a);

// Exact spectral decomposition. Requires the characteristic polynomial to
// split over Q; otherwise IrrationalSpectrum is thrown with the unfactored
// remainder in the message. Eigenvalues ascending.
std::vector<std::pair<Rational, Projection>> eigendecompose(const RationalMatrix& a);

// Left-continuous step family of projections: value(l) = sum of the
// eigenprojections with eigenvalue strictly below l.
struct ProjectionFamily {
    std::vector<Rational> breakpoints;  // ascending eigenvalues
    std::vector<Projection> steps;      // steps[i] = value between breakpoints i-1, i
    Projection value_at(const Rational& lambda) const;
};

ProjectionFamily spectral_family(const RationalMatrix& a);
ProjectionFamily spectral_family(const std::vector<std::pair<Rational, Projection>>& eigen);

struct FamilyReport {
    bool monotone = false;
    bool bottom_is_zero = false; // (1)
    bool top_is_identity = false; // (2)
    bool left_continuous = false; // (3), via the step convention
    std::string witness;
    bool all_ok() const { return monotone && bottom_is_zero && top_is_identity && left_continuous; }
};

FamilyReport verify_family(const ProjectionFamily& f);

// Finite projection OML generated inside Q^n: closure of the inputs under
// intersection, span sum and orthocomplement, folded into an abstract OML.
struct GeneratedOml {
    Oml oml;
    std::vector<Projection> elements; // aligned with element ids
    std::optional<Elem> find(const Projection& p) const;
};

GeneratedOml generate_oml(const std::vector<Projection>& generators,
                          const Caps& caps = {});

} // namespace omlq
