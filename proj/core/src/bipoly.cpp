#include "qhmod/bipoly.hpp"

#include <algorithm>

namespace qhmod {

NumPoly to_numeric(const BiPoly& f) {
    NumPoly r;
    for (auto& [e, c] : f.terms()) r.add_term(e, c.to_std());
    return r;
}

ExactComplex poly_eval(const BiPoly& f, const ExactComplex& x, const ExactComplex& y) {
    return f.eval(x, y);
}

PullbackResult poly_pullback_blowup(const BiPoly& f, BlowupChart chart) {
    if (f.is_zero()) throw ZeroPolynomialError{};
    BiPoly total;
    for (auto& [e, c] : f.terms()) {
        // T: x^i y^j -> x^{i+j} t^j;  U: x^i y^j -> u^i y^{i+j}
        Exp2 img = (chart == BlowupChart::T) ? Exp2{e.i + e.j, e.j} : Exp2{e.i, e.i + e.j};
        total.add_term(img, c);
    }
    std::int64_t mult = (chart == BlowupChart::T) ? total.ord_x() : total.ord_y();
    BiPoly strict = (chart == BlowupChart::T) ? total.shifted(-mult, 0) : total.shifted(0, -mult);
    return {mult, strict};
}

ExactComplex UniPoly::eval(const ExactComplex& x) const {
    ExactComplex acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    std::vector<ExactComplex> d;
    for (std::size_t k = 1; k < c_.size(); ++k)
        d.push_back(ExactComplex(static_cast<long>(k)) * c_[k]);
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return {};
    ExactComplex l = lead();
    std::vector<ExactComplex> d;
    d.reserve(c_.size());
    for (auto& v : c_) d.push_back(v / l);
    return UniPoly(std::move(d));
}

std::int64_t UniPoly::valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<std::int64_t>(k);
    return 0;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<ExactComplex> d(std::max(a.c_.size(), b.c_.size()), ExactComplex(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) d[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) d[k] += b.c_[k];
    return UniPoly(std::move(d));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<ExactComplex> d(std::max(a.c_.size(), b.c_.size()), ExactComplex(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) d[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) d[k] -= b.c_[k];
    return UniPoly(std::move(d));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ExactComplex> d(a.c_.size() + b.c_.size() - 1, ExactComplex(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(d));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& num, const UniPoly& den) {
    if (den.is_zero()) throw ZeroDenominatorError{};
    if (num.degree() < den.degree()) return {UniPoly{}, num};
    std::vector<ExactComplex> rem = num.c_;
    std::vector<ExactComplex> quo(num.c_.size() - den.c_.size() + 1, ExactComplex(0));
    ExactComplex dl = den.lead();
    for (std::int64_t k = num.degree(); k >= den.degree(); --k) {
        ExactComplex c = rem[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        ExactComplex f = c / dl;
        quo[static_cast<std::size_t>(k - den.degree())] = f;
        for (std::int64_t j = 0; j <= den.degree(); ++j)
            rem[static_cast<std::size_t>(k - den.degree() + j)] -=
                f * den.c_[static_cast<std::size_t>(j)];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly f = a, g = b;
    while (!g.is_zero()) {
        auto [q, r] = UniPoly::divmod(f, g);
        f = g;
        g = r.monic();
    }
    return f.monic();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const UniPoly& f) {
    std::vector<SquarefreeFactor> out;
    if (f.degree() < 1) return out;
    // Yun: works in characteristic 0.
    UniPoly a = f.monic();
    UniPoly d = a.derivative();
    UniPoly g = gcd(a, d);
    UniPoly c = UniPoly::divmod(a, g).first;
    UniPoly w = UniPoly::divmod(d, g).first;
    std::int64_t mult = 1;
    while (c.degree() >= 1) {
        UniPoly z = w - c.derivative();
        UniPoly y = gcd(c, z);
        if (y.degree() >= 1) out.push_back({y, mult});
        c = UniPoly::divmod(c, y).first;
        w = UniPoly::divmod(z, y).first;
        ++mult;
    }
    return out;
}

} // namespace qhmod
