#pragma once

#include <stdexcept>
#include <string>

namespace omlq {

// Input/validation failures. CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAPoset : ValidationError {
    using ValidationError::ValidationError;
};
struct NotALattice : ValidationError {
    using ValidationError::ValidationError;
};
struct OrthoLawViolation : ValidationError {
    using ValidationError::ValidationError;
};
struct NotOrthomodular : ValidationError {
    using ValidationError::ValidationError;
};
struct ElementNotInSubalgebra : ValidationError {
    using ValidationError::ValidationError;
};
struct NotHermitian : ValidationError {
    using ValidationError::ValidationError;
};
struct IrrationalSpectrum : ValidationError {
    using ValidationError::ValidationError;
};
struct GridDoesNotBracketSpectrum : ValidationError {
    using ValidationError::ValidationError;
};
struct ProjectionNotInContext : ValidationError {
    using ValidationError::ValidationError;
};
struct GridMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct ContextMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct OffGridRational : ValidationError {
    using ValidationError::ValidationError;
};
struct LambdaAboveGrid : ValidationError {
    using ValidationError::ValidationError;
};
struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};

// Caller bugs rather than bad input.
struct ParentMismatch : std::logic_error {
    using std::logic_error::logic_error;
};
struct UnboundVariable : std::logic_error {
    using std::logic_error::logic_error;
};

// Everything downstream of enumeration is exhaustive; fail loudly rather
// than hang. CLI maps this to exit code 3.
struct SizeCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace omlq
