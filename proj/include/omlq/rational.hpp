#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace omlq {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p" or "p/q" with q > 0 after normalization. Throws ParseError.
Rational parse_rational(const std::string& text);

// Canonical "p" or "p/q" rendering (q omitted when 1).
std::string rational_string(const Rational& r);

} // namespace omlq
