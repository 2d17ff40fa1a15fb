#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhmod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parser errors carry the byte offset of the offending token.
struct ParseError : Error {
    std::size_t position;
    std::string expected;
    ParseError(std::size_t pos, const std::string& what_expected)
        : Error("syntax error at position " + std::to_string(pos) + ": expected " + what_expected),
          position(pos), expected(what_expected) {}
};

struct NegativeExponentError : Error {
    std::size_t position;
    explicit NegativeExponentError(std::size_t pos)
        : Error("negative exponent at position " + std::to_string(pos)), position(pos) {}
};

struct NonIntegerExponentError : Error {
    std::size_t position;
    explicit NonIntegerExponentError(std::size_t pos)
        : Error("non-integer exponent at position " + std::to_string(pos)), position(pos) {}
};

struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero") {}
};

struct ZeroPolynomialError : Error {
    ZeroPolynomialError() : Error("operation undefined for the zero polynomial") {}
};

struct ZeroDenominatorError : Error {
    ZeroDenominatorError() : Error("zero denominator") {}
};

struct NotAUnitError : Error {
    NotAUnitError() : Error("series has vanishing constant term") {}
};

struct NotQuasiHomogeneousError : Error {
    NotQuasiHomogeneousError() : Error("polynomial is not quasi-homogeneous") {}
};

struct RootFindingDivergenceError : Error {
    RootFindingDivergenceError() : Error("root finder exceeded its iteration budget") {}
};

struct ReExpansionMismatchError : Error {
    double residual;
    explicit ReExpansionMismatchError(double r)
        : Error("re-expansion of the normal form does not match the input"), residual(r) {}
};

struct NotReducedError : Error {
    using Error::Error;
};

struct DegenerateTripleError : Error {
    DegenerateTripleError() : Error("points of a triple must be pairwise distinct") {}
};

struct ToleranceAmbiguityError : Error {
    double residual;
    explicit ToleranceAmbiguityError(double r)
        : Error("equivalence cannot be decided at this tolerance"), residual(r) {}
};

struct NotCoprimeError : Error {
    NotCoprimeError() : Error("weights must be coprime positive integers with p <= q") {}
};

struct NotInvariantError : Error {
    NotInvariantError() : Error("the axis y=0 is not invariant for this 1-form") {}
};

struct NoIsolatedContactError : Error {
    NoIsolatedContactError() : Error("b(x,0) vanishes identically") {}
};

struct ResonantDataError : Error {
    ResonantDataError() : Error("resonant exponent data: nu*s - mu*r = 0") {}
};

struct ResonanceError : Error {
    ResonanceError() : Error("normalization is undefined for resonant data") {}
};

} // namespace qhmod
