#include "qhmod/laurent.hpp"

namespace qhmod {

namespace {

// Coefficients of u^{-1} mod x^count for u with u(0) != 0.
std::vector<ExactComplex> invert_unit(const UniPoly& u, std::int64_t count) {
    std::vector<ExactComplex> inv(static_cast<std::size_t>(count), ExactComplex(0));
    if (count <= 0) return inv;
    ExactComplex u0 = u.coeff(0);
    inv[0] = u0.inverse();
    for (std::int64_t k = 1; k < count; ++k) {
        ExactComplex acc(0);
        for (std::int64_t j = 1; j <= k; ++j) acc += u.coeff(j) * inv[static_cast<std::size_t>(k - j)];
        inv[static_cast<std::size_t>(k)] = (ExactComplex(0) - acc) / u0;
    }
    return inv;
}

} // namespace

LaurentTail laurent_expand(const UniPoly& num, const UniPoly& den, std::int64_t last_power) {
    if (den.is_zero()) throw ZeroDenominatorError{};
    if (num.is_zero()) return {0, {}};
    std::int64_t s = den.valuation();
    std::int64_t v = num.valuation();
    // num/den = x^{v-s} * (num/x^v) / (den/x^s), the second factor a unit ratio
    std::vector<ExactComplex> nsh(num.coeffs().begin() + v, num.coeffs().end());
    std::vector<ExactComplex> dsh(den.coeffs().begin() + s, den.coeffs().end());
    UniPoly n2{std::move(nsh)}, d2{std::move(dsh)};
    std::int64_t val = v - s;
    std::int64_t count = last_power - val + 1;
    if (count <= 0) return {val, {}};
    auto inv = invert_unit(d2, count);
    std::vector<ExactComplex> out(static_cast<std::size_t>(count), ExactComplex(0));
    for (std::int64_t k = 0; k < count; ++k) {
        ExactComplex acc(0);
        for (std::int64_t j = 0; j <= k; ++j) acc += n2.coeff(j) * inv[static_cast<std::size_t>(k - j)];
        out[static_cast<std::size_t>(k)] = acc;
    }
    return {val, std::move(out)};
}

ExactComplex laurent_residue(const UniPoly& num, const UniPoly& den) {
    if (den.is_zero()) throw ZeroDenominatorError{};
    if (num.is_zero()) return ExactComplex(0);
    return laurent_expand(num, den, -1).coeff(-1);
}

} // namespace qhmod
