#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "qhmod/exact.hpp"

namespace qhmod {

struct Exp2 {
    std::int64_t i = 0; // x-exponent
    std::int64_t j = 0; // y-exponent
    friend auto operator<=>(const Exp2&, const Exp2&) = default;
};

namespace detail {
inline bool coeff_is_zero(const ExactComplex& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) { return c.real() == 0.0 && c.imag() == 0.0; }
} // namespace detail

/// Sparse bivariate polynomial over K. No zero coefficients are stored;
/// the empty map is the zero polynomial.
template <class K>
class PolyT {
public:
    using coeff_type = K;
    using map_type = std::map<Exp2, K>;

    PolyT() = default;

    static PolyT zero() { return {}; }
    static PolyT constant(K c) {
        PolyT p;
        p.add_term({0, 0}, std::move(c));
        return p;
    }
    static PolyT monomial(Exp2 e, K c) {
        PolyT p;
        p.add_term(e, std::move(c));
        return p;
    }
    static PolyT var_x() { return monomial({1, 0}, K(1)); }
    static PolyT var_y() { return monomial({0, 1}, K(1)); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const map_type& terms() const { return terms_; }

    K coeff(Exp2 e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? K(0) : it->second;
    }

    void add_term(Exp2 e, K c) {
        if (detail::coeff_is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(c));
            return;
        }
        it->second += c;
        if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }

    std::int64_t ord_x() const {
        std::int64_t m = INT64_MAX;
        for (auto& [e, c] : terms_) m = std::min(m, e.i);
        return terms_.empty() ? 0 : m;
    }
    std::int64_t ord_y() const {
        std::int64_t m = INT64_MAX;
        for (auto& [e, c] : terms_) m = std::min(m, e.j);
        return terms_.empty() ? 0 : m;
    }
    std::int64_t deg_x() const {
        std::int64_t m = 0;
        for (auto& [e, c] : terms_) m = std::max(m, e.i);
        return m;
    }
    std::int64_t deg_y() const {
        std::int64_t m = 0;
        for (auto& [e, c] : terms_) m = std::max(m, e.j);
        return m;
    }

    /// Multiply by x^di y^dj; exponents must stay nonnegative.
    PolyT shifted(std::int64_t di, std::int64_t dj) const {
        PolyT r;
        for (auto& [e, c] : terms_) r.add_term({e.i + di, e.j + dj}, c);
        return r;
    }

    friend PolyT operator+(const PolyT& a, const PolyT& b) {
        PolyT r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend PolyT operator-(const PolyT& a, const PolyT& b) {
        PolyT r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, K(0) - c);
        return r;
    }
    friend PolyT operator-(const PolyT& a) { return PolyT{} - a; }
    friend PolyT operator*(const PolyT& a, const PolyT& b) {
        PolyT r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) r.add_term({ea.i + eb.i, ea.j + eb.j}, ca * cb);
        return r;
    }
    friend PolyT operator*(const K& s, const PolyT& a) {
        PolyT r;
        for (auto& [e, c] : a.terms_) r.add_term(e, s * c);
        return r;
    }

    PolyT pow(std::int64_t n) const {
        PolyT r = constant(K(1));
        PolyT base = *this;
        for (; n > 0; n >>= 1) {
            if (n & 1) r = r * base;
            if (n > 1) base = base * base;
        }
        return r;
    }

    K eval(const K& x, const K& y) const {
        K acc(0);
        for (auto& [e, c] : terms_) {
            K t = c;
            for (std::int64_t k = 0; k < e.i; ++k) t *= x;
            for (std::int64_t k = 0; k < e.j; ++k) t *= y;
            acc += t;
        }
        return acc;
    }

    /// Substitute x -> px, y -> py and expand.
    PolyT subst(const PolyT& px, const PolyT& py) const {
        PolyT r;
        for (auto& [e, c] : terms_)
            r = r + constant(c) * px.pow(e.i) * py.pow(e.j);
        return r;
    }

    PolyT d_dy() const {
        PolyT r;
        for (auto& [e, c] : terms_)
            if (e.j > 0) r.add_term({e.i, e.j - 1}, K(e.j) * c);
        return r;
    }

    friend bool operator==(const PolyT& a, const PolyT& b) { return a.terms_ == b.terms_; }

private:
    map_type terms_;
};

using BiPoly = PolyT<ExactComplex>;
using NumPoly = PolyT<std::complex<double>>;

NumPoly to_numeric(const BiPoly& f);

/// Exact value of f at (x, y).
ExactComplex poly_eval(const BiPoly& f, const ExactComplex& x, const ExactComplex& y);

/// Charts of a single blowup of the origin.
/// T: (x, y) -> (x, t*x), exceptional line x = 0, output variables (x, t).
/// U: (x, y) -> (u*y, y), exceptional line y = 0, output variables (u, y).
enum class BlowupChart { T, U };

struct PullbackResult {
    std::int64_t mult = 0; // order of the total transform along the exceptional line
    BiPoly strict;         // total transform divided by E^mult
};

/// Pull f back under one blowup and split off the exceptional factor,
/// so that E^mult * strict equals the total transform identically.
PullbackResult poly_pullback_blowup(const BiPoly& f, BlowupChart chart);

/// Dense univariate polynomial over the Gaussian rationals, ascending coefficients.
/// Trailing zeros are trimmed; an empty vector is the zero polynomial.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<ExactComplex> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(ExactComplex v) { return UniPoly({std::move(v)}); }

    bool is_zero() const { return c_.empty(); }
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    const std::vector<ExactComplex>& coeffs() const { return c_; }
    ExactComplex coeff(std::int64_t k) const {
        return (k < 0 || k >= static_cast<std::int64_t>(c_.size())) ? ExactComplex(0) : c_[k];
    }
    ExactComplex lead() const { return c_.empty() ? ExactComplex(0) : c_.back(); }

    ExactComplex eval(const ExactComplex& x) const;
    UniPoly derivative() const;
    UniPoly monic() const;

    /// Order of vanishing at 0 (degree+1 convention not used; zero poly -> 0).
    std::int64_t valuation() const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division; throws ZeroDenominatorError on zero divisor.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& num, const UniPoly& den);

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<ExactComplex> c_;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);

struct SquarefreeFactor {
    UniPoly factor; // monic, squarefree
    std::int64_t multiplicity = 1;
};

/// Yun's squarefree decomposition over the Gaussian rationals.
/// Returns monic pairwise-coprime factors; the product of factor^multiplicity
/// times the leading coefficient reproduces the input.
std::vector<SquarefreeFactor> squarefree_decomposition(const UniPoly& f);

} // namespace qhmod
