#pragma once

#include <cstdint>
#include <vector>

#include "qhmod/bipoly.hpp"

namespace qhmod {

/// Initial segment of a Laurent expansion at 0: coefficients in ascending powers
/// starting at `valuation` (possibly negative). Leading coefficient is nonzero
/// unless the tail is identically zero.
struct LaurentTail {
    std::int64_t valuation = 0;
    std::vector<ExactComplex> coefficients;

    ExactComplex coeff(std::int64_t power) const {
        std::int64_t k = power - valuation;
        if (k < 0 || k >= static_cast<std::int64_t>(coefficients.size())) return ExactComplex(0);
        return coefficients[k];
    }
};

/// Expand num/den at 0 up to and including the power `last_power`.
LaurentTail laurent_expand(const UniPoly& num, const UniPoly& den, std::int64_t last_power);

/// Coefficient of x^{-1} in the Laurent expansion of num/den at 0, computed exactly.
ExactComplex laurent_residue(const UniPoly& num, const UniPoly& den);

} // namespace qhmod
