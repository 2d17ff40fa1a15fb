#include "qhmod/series.hpp"

#include <algorithm>
#include <cmath>

namespace qhmod {

namespace {
inline std::size_t tri_size(int order) {
    return static_cast<std::size_t>((order + 1) * (order + 2) / 2);
}
inline std::size_t tri_index(int i, int j) {
    int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
}
} // namespace

SeriesBivariate::SeriesBivariate(int order) : order_(std::max(order, 0)), c_(tri_size(order_)) {}

SeriesBivariate SeriesBivariate::constant(scalar c, int order) {
    SeriesBivariate s(order);
    s.set_coeff(0, 0, c);
    return s;
}

SeriesBivariate SeriesBivariate::variable_t(int order) {
    SeriesBivariate s(order);
    s.set_coeff(1, 0, 1.0);
    return s;
}

SeriesBivariate SeriesBivariate::variable_x(int order) {
    SeriesBivariate s(order);
    s.set_coeff(0, 1, 1.0);
    return s;
}

SeriesBivariate::scalar SeriesBivariate::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_) return {};
    return c_[tri_index(i, j)];
}

void SeriesBivariate::set_coeff(int i, int j, scalar v) {
    if (i < 0 || j < 0 || i + j > order_) return;
    c_[tri_index(i, j)] = v;
}

SeriesBivariate SeriesBivariate::truncated(int new_order) const {
    SeriesBivariate r(new_order);
    int lim = std::min(order_, new_order);
    for (int d = 0; d <= lim; ++d)
        for (int j = 0; j <= d; ++j) r.set_coeff(d - j, j, coeff(d - j, j));
    return r;
}

SeriesBivariate operator+(const SeriesBivariate& a, const SeriesBivariate& b) {
    int ord = std::min(a.order(), b.order());
    SeriesBivariate r(ord);
    for (int d = 0; d <= ord; ++d)
        for (int j = 0; j <= d; ++j) r.set_coeff(d - j, j, a.coeff(d - j, j) + b.coeff(d - j, j));
    return r;
}

SeriesBivariate operator-(const SeriesBivariate& a, const SeriesBivariate& b) {
    int ord = std::min(a.order(), b.order());
    SeriesBivariate r(ord);
    for (int d = 0; d <= ord; ++d)
        for (int j = 0; j <= d; ++j) r.set_coeff(d - j, j, a.coeff(d - j, j) - b.coeff(d - j, j));
    return r;
}

SeriesBivariate operator*(const SeriesBivariate& a, const SeriesBivariate& b) {
    int ord = std::min(a.order(), b.order());
    SeriesBivariate r(ord);
    for (int da = 0; da <= ord; ++da)
        for (int ja = 0; ja <= da; ++ja) {
            auto ca = a.coeff(da - ja, ja);
            if (ca == SeriesBivariate::scalar{}) continue;
            for (int db = 0; da + db <= ord; ++db)
                for (int jb = 0; jb <= db; ++jb) {
                    auto cb = b.coeff(db - jb, jb);
                    if (cb == SeriesBivariate::scalar{}) continue;
                    int i = (da - ja) + (db - jb), j = ja + jb;
                    r.set_coeff(i, j, r.coeff(i, j) + ca * cb);
                }
        }
    return r;
}

SeriesBivariate operator*(SeriesBivariate::scalar s, const SeriesBivariate& a) {
    SeriesBivariate r(a.order());
    for (int d = 0; d <= a.order(); ++d)
        for (int j = 0; j <= d; ++j) r.set_coeff(d - j, j, s * a.coeff(d - j, j));
    return r;
}

SeriesBivariate SeriesBivariate::pow_int(long n) const {
    SeriesBivariate r = constant(1.0, order_);
    SeriesBivariate base = *this;
    for (; n > 0; n >>= 1) {
        if (n & 1) r = r * base;
        if (n > 1) base = base * base;
    }
    return r;
}

double SeriesBivariate::max_abs() const {
    double m = 0;
    for (auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

double SeriesBivariate::max_abs_diff(const SeriesBivariate& a, const SeriesBivariate& b) {
    int ord = std::min(a.order(), b.order());
    double m = 0;
    for (int d = 0; d <= ord; ++d)
        for (int j = 0; j <= d; ++j) m = std::max(m, std::abs(a.coeff(d - j, j) - b.coeff(d - j, j)));
    return m;
}

SeriesBivariate series_unit_power(const SeriesBivariate& U, std::complex<double> c) {
    if (!U.is_unit()) throw NotAUnitError{};
    int ord = U.order();
    std::complex<double> c0 = U.coeff(0, 0);

    // V := U/c0 - 1 has zero constant term, so V^k vanishes below degree k.
    SeriesBivariate V = (1.0 / c0) * U;
    V.set_coeff(0, 0, 0.0);

    // log(1 + V) = sum (-1)^{k+1} V^k / k
    SeriesBivariate logU(ord);
    SeriesBivariate vk = SeriesBivariate::constant(1.0, ord);
    for (int k = 1; k <= ord; ++k) {
        vk = vk * V;
        double sign = (k % 2 == 1) ? 1.0 : -1.0;
        logU = logU + (sign / k) * vk;
    }

    // exp(c log U), then scale by the principal power of the constant term.
    SeriesBivariate W = c * logU;
    SeriesBivariate e = SeriesBivariate::constant(1.0, ord);
    SeriesBivariate wk = SeriesBivariate::constant(1.0, ord);
    double fact = 1.0;
    for (int k = 1; k <= ord; ++k) {
        wk = wk * W;
        fact *= k;
        e = e + (1.0 / fact) * wk;
    }
    return std::exp(c * std::log(c0)) * e;
}

} // namespace qhmod
