#pragma once

#include <string>
#include <string_view>

#include "qhmod/bipoly.hpp"

namespace qhmod {

/// Parse a bivariate polynomial expression into its expanded sparse form.
///
/// Grammar: integers, rationals "a/b", the imaginary unit "i", variables "x"
/// and "y", operators + - * ^, parentheses; implicit multiplication between
/// factors; exponents are nonnegative integer literals.
///
/// Throws ParseError (with position and expected token), NegativeExponentError,
/// or NonIntegerExponentError. Total: never aborts on any input.
BiPoly parse_poly(std::string_view src);

/// Canonical text. Terms ordered by (total degree, x-exponent) descending,
/// coefficients in lowest terms; parse_poly(format_poly(p)) == p exactly.
std::string format_poly(const BiPoly& f);

/// One line of the file/CLI input format.
struct PolySource {
    std::string text;
    BiPoly parse() const { return parse_poly(text); }
};

} // namespace qhmod
