#include "qhmod/quasihom.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qhmod {

BiPoly swap_variables(const BiPoly& f) {
    BiPoly r;
    for (auto& [e, c] : f.terms()) r.add_term({e.j, e.i}, c);
    return r;
}

Weights detect_weights(const BiPoly& f) {
    if (f.is_zero()) throw ZeroPolynomialError{};
    std::vector<Exp2> support;
    support.reserve(f.term_count());
    for (auto& [e, c] : f.terms()) support.push_back(e);

    if (support.size() == 1) {
        Weights w;
        w.degenerate = true;
        w.p = 1;
        w.q = 1;
        w.d = support[0].i + support[0].j;
        return w;
    }

    // Weight vector is normal to the support line: (wx, wy) ~ (dj, -di).
    std::int64_t di = support[1].i - support[0].i;
    std::int64_t dj = support[1].j - support[0].j;
    std::int64_t wx = dj, wy = -di;
    if (wx < 0 || wy < 0) {
        wx = -wx;
        wy = -wy;
    }
    if (wx <= 0 || wy <= 0) throw NotQuasiHomogeneousError{};
    std::int64_t g = std::gcd(wx, wy);
    wx /= g;
    wy /= g;
    std::int64_t d = wx * support[0].i + wy * support[0].j;
    for (auto& e : support)
        if (wx * e.i + wy * e.j != d) throw NotQuasiHomogeneousError{};

    Weights w;
    w.d = d;
    if (wx <= wy) {
        w.p = wx;
        w.q = wy;
    } else {
        w.p = wy;
        w.q = wx;
        w.swapped = true;
    }
    return w;
}

MonomialSplit strip_monomial(const BiPoly& f) {
    if (f.is_zero()) throw ZeroPolynomialError{};
    MonomialSplit out;
    out.m = f.ord_x();
    out.n = f.ord_y();
    out.commode = f.shifted(-out.m, -out.n);
    return out;
}

namespace {

std::vector<std::complex<double>> roots_with_fallback(const UniPoly& h) {
    std::vector<std::complex<double>> coeffs;
    coeffs.reserve(h.coeffs().size());
    for (auto& c : h.coeffs()) coeffs.push_back(c.to_std());
    try {
        return aberth_roots(coeffs);
    } catch (const RootFindingDivergenceError&) {
        return companion_roots(coeffs);
    }
}

void sort_complex(std::vector<std::complex<double>>& v) {
    std::sort(v.begin(), v.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

} // namespace

CommodeFactors commode_factor(const BiPoly& commode, const Weights& w) {
    CommodeFactors out;
    if (commode.is_zero()) throw ZeroPolynomialError{};
    if (commode.term_count() == 1) {
        out.mu = commode.coeff({0, 0}); // a commode monomial is a constant
        return out;
    }
    std::int64_t d = 0;
    for (auto& [e, c] : commode.terms()) {
        d = w.p * e.i + w.q * e.j;
        break;
    }
    std::int64_t k = d / (w.p * w.q);
    out.mu = commode.coeff({0, w.p * k});
    if (out.mu.is_zero()) throw NotQuasiHomogeneousError{};

    // g(z) = sum_{i+j=k} a_{qi,pj} z^j, monic after dividing by mu.
    std::vector<ExactComplex> gc(static_cast<std::size_t>(k) + 1, ExactComplex(0));
    for (std::int64_t j = 0; j <= k; ++j)
        gc[static_cast<std::size_t>(j)] = commode.coeff({w.q * (k - j), w.p * j}) / out.mu;
    UniPoly g{std::move(gc)};

    // Exact squarefree splitting pins multiplicities before any numerics.
    for (auto& sf : squarefree_decomposition(g)) {
        auto roots = roots_with_fallback(sf.factor);
        for (auto r : roots)
            for (std::int64_t t = 0; t < sf.multiplicity; ++t) out.lambdas.push_back(r);
    }
    sort_complex(out.lambdas);
    if (static_cast<std::int64_t>(out.lambdas.size()) != k) throw RootFindingDivergenceError{};
    return out;
}

NumPoly expand_normal_form(const QHNormalForm& nf) {
    NumPoly acc = NumPoly::monomial({nf.m, nf.n}, nf.mu.to_std());
    for (auto& l : nf.lambdas) {
        NumPoly factor;
        factor.add_term({0, nf.weights.p}, 1.0);
        factor.add_term({nf.weights.q, 0}, -l);
        acc = acc * factor;
    }
    return acc;
}

QHNormalForm decompose(const BiPoly& f, double tol) {
    Weights w = detect_weights(f);
    QHNormalForm nf;
    nf.weights = w;
    if (w.degenerate) {
        auto& [e, c] = *f.terms().begin();
        nf.mu = c;
        nf.m = e.i;
        nf.n = e.j;
        return nf;
    }
    BiPoly g = w.swapped ? swap_variables(f) : f;
    MonomialSplit split = strip_monomial(g);
    nf.m = split.m;
    nf.n = split.n;
    CommodeFactors cf = commode_factor(split.commode, w);
    nf.mu = cf.mu;
    nf.lambdas = std::move(cf.lambdas);

    NumPoly expanded = expand_normal_form(nf);
    NumPoly orig = to_numeric(g);
    double scale = 0;
    for (auto& [e, c] : orig.terms()) scale = std::max(scale, std::abs(c));
    double resid = 0;
    NumPoly diff = expanded - orig;
    for (auto& [e, c] : diff.terms()) resid = std::max(resid, std::abs(c));
    if (resid > tol * scale) throw ReExpansionMismatchError(resid / scale);
    return nf;
}

CurveType classify_curve(const QHNormalForm& nf, double distinct_tol) {
    if (nf.m > 1) throw NotReducedError("x-axis factor has multiplicity " + std::to_string(nf.m));
    if (nf.n > 1) throw NotReducedError("y-axis factor has multiplicity " + std::to_string(nf.n));
    double maxmag = 1.0;
    for (auto& l : nf.lambdas) maxmag = std::max(maxmag, std::abs(l));
    for (std::size_t i = 0; i < nf.lambdas.size(); ++i)
        for (std::size_t j = i + 1; j < nf.lambdas.size(); ++j)
            if (std::abs(nf.lambdas[i] - nf.lambdas[j]) <= distinct_tol * maxmag)
                throw NotReducedError("roots collide within the distinctness tolerance");

    CurveType ct;
    if (nf.weights.degenerate || (nf.weights.p == 1 && nf.weights.q == 1)) {
        ct.kind = StratumKind::Homogeneous;
        ct.p = 1;
        ct.q = 1;
        if (nf.m == 1) ct.lambdas.push_back(SpherePoint::inf());
        if (nf.n == 1) ct.lambdas.push_back(SpherePoint::finite(0.0));
        for (auto& l : nf.lambdas) ct.lambdas.push_back(SpherePoint::finite(l));
    } else if (nf.weights.p == 1) {
        ct.kind = StratumKind::OneQ;
        ct.p = 1;
        ct.q = nf.weights.q;
        ct.flag_m = static_cast<int>(nf.m);
        if (nf.n == 1) ct.lambdas.push_back(SpherePoint::finite(0.0));
        for (auto& l : nf.lambdas) ct.lambdas.push_back(SpherePoint::finite(l));
    } else {
        ct.kind = StratumKind::PQ;
        ct.p = nf.weights.p;
        ct.q = nf.weights.q;
        ct.flag_m = static_cast<int>(nf.m);
        ct.flag_k = static_cast<int>(nf.n);
        for (auto& l : nf.lambdas) ct.lambdas.push_back(SpherePoint::finite(l));
    }
    std::sort(ct.lambdas.begin(), ct.lambdas.end(), [](const SpherePoint& a, const SpherePoint& b) {
        if (a.infinite != b.infinite) return a.infinite;
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
    return ct;
}

std::vector<std::complex<double>> aberth_roots(std::span<const std::complex<double>> coeffs) {
    std::vector<std::complex<double>> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == std::complex<double>(0)) c.pop_back();
    if (c.empty()) throw ZeroPolynomialError{};

    std::vector<std::complex<double>> roots;
    std::size_t vz = 0;
    while (vz < c.size() - 1 && c[vz] == std::complex<double>(0)) {
        roots.push_back(0.0);
        ++vz;
    }
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(vz));
    std::size_t k = c.size() - 1;
    if (k == 0) return roots;
    for (auto& v : c) v /= c.back();
    if (k == 1) {
        roots.push_back(-c[0]);
        return roots;
    }

    double cauchy = 0;
    for (std::size_t i = 0; i < k; ++i) cauchy = std::max(cauchy, std::abs(c[i]));
    cauchy += 1.0;
    double r0 = std::pow(std::max(std::abs(c[0]), 1e-300), 1.0 / static_cast<double>(k));
    r0 = std::clamp(r0, 1e-3, cauchy);

    std::vector<std::complex<double>> z(k);
    for (std::size_t j = 0; j < k; ++j) {
        double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(k) + 0.7;
        z[j] = r0 * std::complex<double>(std::cos(th), std::sin(th));
    }

    const int max_iters = 200;
    const double conv = 1e-13;
    for (int iter = 0; iter < max_iters; ++iter) {
        double worst = 0;
        for (std::size_t j = 0; j < k; ++j) {
            std::complex<double> p = 0, dp = 0;
            for (std::size_t t = k + 1; t-- > 0;) {
                dp = dp * z[j] + p;
                p = p * z[j] + c[t];
            }
            std::complex<double> w;
            if (p == std::complex<double>(0)) {
                w = 0;
            } else if (dp == std::complex<double>(0)) {
                w = std::complex<double>(1e-3, 1e-3); // nudge off a critical point
            } else {
                std::complex<double> ratio = p / dp;
                std::complex<double> sum = 0;
                for (std::size_t t = 0; t < k; ++t)
                    if (t != j) sum += 1.0 / (z[j] - z[t]);
                std::complex<double> den = 1.0 - ratio * sum;
                w = (den == std::complex<double>(0)) ? ratio : ratio / den;
            }
            z[j] -= w;
            worst = std::max(worst, std::abs(w) / std::max(std::abs(z[j]), 1.0));
        }
        if (worst < conv) {
            roots.insert(roots.end(), z.begin(), z.end());
            return roots;
        }
    }
    throw RootFindingDivergenceError{};
}

std::vector<std::complex<double>> companion_roots(std::span<const std::complex<double>> coeffs) {
    std::vector<std::complex<double>> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == std::complex<double>(0)) c.pop_back();
    if (c.empty()) throw ZeroPolynomialError{};
    std::size_t k = c.size() - 1;
    std::vector<std::complex<double>> roots;
    if (k == 0) return roots;
    for (auto& v : c) v /= c.back();

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k),
                                                static_cast<Eigen::Index>(k));
    for (std::size_t i = 1; i < k; ++i)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < k; ++i)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k - 1)) = -c[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        roots.push_back(solver.eigenvalues()(i));
    std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

} // namespace qhmod
