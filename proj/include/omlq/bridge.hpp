#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omlq/daseinisation.hpp"
#include "omlq/logic.hpp"
#include "omlq/matrix.hpp"

namespace omlq {

struct RationalGrid {
    std::vector<Rational> points; // strictly increasing, nonempty
    static RationalGrid make(std::vector<Rational> points);
    bool on_grid(const Rational& q) const;
    bool operator==(const RationalGrid& o) const { return points == o.points; }
};

// Everything the bridge needs about its finite surrogate for P(H): the
// generated projection OML, its spectral presheaf and the quotient.
// Held behind pointers so the presheaf's address (which every subobject and
// the quotient capture) stays stable however the context itself is moved.
struct BridgeContext {
    GeneratedOml gen;
    std::unique_ptr<SpectralPresheaf> presheaf;
    std::unique_ptr<EQuotient> quotient;

    static BridgeContext build(const std::vector<Projection>& generators,
                               const Caps& caps = {});
};

// A grid-supported Dedekind-real candidate: u(q) is a truth value per grid
// rational, nondecreasing along the grid for genuine reals.
struct RealName {
    const BridgeContext* context;
    RationalGrid grid;
    std::vector<ClopenSubobject> values; // aligned with grid.points
};

// u(q) = delta(A_q) where {A_q} is the left-continuous spectral family of A
// sampled at the grid points. The grid must bracket the spectrum
// (q0 <= min eigenvalue, qm > max eigenvalue) and every sampled projection
// must be an element of the context.
RealName bridge_H(const RationalMatrix& a, const RationalGrid& grid,
                  const BridgeContext& ctx);
RealName bridge_H(const std::vector<std::pair<Rational, Projection>>& eigen,
                  const RationalGrid& grid, const BridgeContext& ctx);

// P_q = || q in u ||. Off-grid rationals are rejected unless the caller opts
// into the right-continuous step convention (value at the largest grid point
// <= q; the first value below the grid).
ClopenSubobject membership(const RealName& u, const Rational& q,
                           bool step_convention = false);

struct DedekindReport {
    bool monotone = false;
    bool bottom_is_bottom = false;   // (i)  P_{q0} = bottom
    bool top_is_top = false;         // (ii) P_{qm} = top
    bool right_continuous = false;   // (iii) via the step convention
    std::string witness;
    bool is_dedekind() const {
        return monotone && bottom_is_bottom && top_is_top && right_continuous;
    }
};

DedekindReport is_dedekind_real(const RealName& u);

// E_lambda = meet of P_q over grid points q > lambda. Undefined at or above
// the last grid point (LambdaAboveGrid).
ClopenSubobject cut_to_E(const RealName& u, const Rational& lambda);

// Weakly right continuous cut family with values in the context lattice.
struct LatticeCutFamily {
    const Oml* context;
    std::vector<Rational> grid;
    std::vector<Elem> values; // values[i] = epsilon(P_{grid[i]})
    // value on [grid[i], grid[i+1]) is values[i+1]; below the grid values[0]
    Elem value_at(const Rational& lambda) const;
};

// G_lambda = g([E_lambda]) = epsilon(E_lambda).
LatticeCutFamily to_operator_family_G(const RealName& u);

struct WrcFamilyReport {
    bool meet_is_zero = false;   // (i''')
    bool step_convention_ok = false; // (iii''')
    bool sup_is_one = false;     // (ii'''): reported, never assumed
    std::string witness;
};

WrcFamilyReport verify_wrc_family(const LatticeCutFamily& f);

// || u = v || = meet over grid q of (P^u_q => P^v_q) ^ (P^v_q => P^u_q),
// with => per the chosen profile.
ClopenSubobject equality_truth(const RealName& u, const RealName& v,
                               const logic::SemanticsProfile& profile);

struct InjectivityReport {
    bool equality_is_top = false;
    std::optional<Rational> distinguishing_q;    // grid q with [P^u_q] != [P^v_q]
    bool g_families_differ = false;
    std::optional<Rational> g_witness;           // grid point where G values differ
    bool operators_differ = false;               // known only at matrix level
    bool grid_resolution_limit = false;          // operators differ, names agree
    std::string profile;
};

InjectivityReport injectivity_experiment(const RealName& u, const RealName& v,
                                         const logic::SemanticsProfile& profile);

// Matrix-level run: builds both names over the shared context, then compares
// the names and the recovered cut families; flags the grid-resolution limit
// when the operators differ but the grid cannot see it.
InjectivityReport injectivity_experiment(const RationalMatrix& a,
                                         const RationalMatrix& b,
                                         const RationalGrid& grid,
                                         const BridgeContext& ctx,
                                         const logic::SemanticsProfile& profile);

} // namespace omlq
