#pragma once

#include <string>
#include <vector>

#include "omlq/daseinisation.hpp"

namespace omlq::suites {

struct SuiteResult {
    std::string id;
    std::vector<std::string> passed;   // one line per verified clause
    std::vector<std::string> failures; // empty iff the suite passed
    bool ok() const { return failures.empty(); }
};

// delta: injectivity, join preservation (subsets up to size 3 plus the full
// set), monotonicity, bounds, delta(a^b) <= delta(a)^delta(b).
SuiteResult daseinisation_suite(const SpectralPresheaf& P);

// epsilon over all enumerated subobjects: meet preservation, monotonicity,
// epsilon(delta(a)) = a, delta(epsilon(S)) <= S, join superadditivity, plus
// the adjunction delta(a) <= S iff a <= epsilon(S).
SuiteResult epsilon_suite(const SpectralPresheaf& P);

// f/g are mutually inverse complete lattice isomorphisms.
SuiteResult quotient_iso_suite(const EQuotient& E);

// h: epsilon-preserving, join-preserving, injective.
SuiteResult map_h_suite(const EQuotient& E);

// the only subobject with epsilon value 1 is top.
SuiteResult top_class_suite(const SpectralPresheaf& P);

// the nine * laws over all enumerated subobjects, plus the strictness
// witness for S ^ S* > bottom.
SuiteResult star_suite(const SpectralPresheaf& P);

// negative results: a subobject with ~S v S != top under Heyting negation,
// a class with [~S] v [S] != [top] at the quotient level, and a pair with
// epsilon(S v T) > epsilon(S) v epsilon(T).
SuiteResult negative_results_suite(const EQuotient& E);

std::vector<SuiteResult> run_suites(const EQuotient& E, const std::string& which);

} // namespace omlq::suites
