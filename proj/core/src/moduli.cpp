#include "qhmod/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qhmod {

namespace {

// Relative sphere distance: exact at infinity, relative with floor 1 for
// finite points, and treating very large values as close to infinity.
double sphere_dist(const SpherePoint& a, const SpherePoint& b) {
    if (a.infinite && b.infinite) return 0.0;
    if (a.infinite) return 1.0 / std::max(1.0, std::abs(b.z));
    if (b.infinite) return 1.0 / std::max(1.0, std::abs(a.z));
    return std::abs(a.z - b.z) / std::max({1.0, std::abs(a.z), std::abs(b.z)});
}

struct MatchResult {
    double worst = std::numeric_limits<double>::infinity();
    std::vector<int> perm; // source index -> target index
};

// Greedy nearest pairing of the image multiset against the target multiset.
MatchResult match_multisets(const std::vector<SpherePoint>& images,
                            const std::vector<SpherePoint>& targets) {
    MatchResult r;
    if (images.size() != targets.size()) return r;
    std::vector<bool> used(targets.size(), false);
    r.perm.resize(images.size(), -1);
    double worst = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int at = -1;
        for (std::size_t j = 0; j < targets.size(); ++j) {
            if (used[j]) continue;
            double d = sphere_dist(images[i], targets[j]);
            if (d < best) {
                best = d;
                at = static_cast<int>(j);
            }
        }
        used[static_cast<std::size_t>(at)] = true;
        r.perm[i] = at;
        worst = std::max(worst, best);
    }
    r.worst = worst;
    return r;
}

std::string fmt_complex(std::complex<double> z) {
    double re = z.real() + 0.0, im = z.imag() + 0.0; // normalize -0
    char buf[64];
    if (im == 0.0) {
        std::snprintf(buf, sizeof(buf), "%g", re);
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "(%g%+gi)", re, im);
    return buf;
}

} // namespace

Mobius Mobius::normalized() const {
    std::complex<double> det = a * d - b * c;
    if (det == std::complex<double>(0)) throw DegenerateTripleError{};
    std::complex<double> s = std::sqrt(det);
    return {a / s, b / s, c / s, d / s};
}

SpherePoint Mobius::apply(const SpherePoint& z) const {
    if (z.infinite) {
        if (c == std::complex<double>(0)) return SpherePoint::inf();
        return SpherePoint::finite(a / c);
    }
    std::complex<double> den = c * z.z + d;
    if (den == std::complex<double>(0)) return SpherePoint::inf();
    std::complex<double> v = (a * z.z + b) / den;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return SpherePoint::inf();
    return SpherePoint::finite(v);
}

Mobius operator*(const Mobius& f, const Mobius& g) {
    return {f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
            f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
}

SpherePoint group_apply(const GroupElement& g, const SpherePoint& z) {
    if (auto* m = std::get_if<Mobius>(&g)) return m->apply(z);
    if (z.infinite) return z;
    if (auto* a = std::get_if<AffineMap>(&g)) return SpherePoint::finite(a->apply(z.z));
    return SpherePoint::finite(std::get<ScalingMap>(g).apply(z.z));
}

CurveType group_apply(const GroupElement& g, const CurveType& curve) {
    CurveType out = curve;
    for (auto& l : out.lambdas) l = group_apply(g, l);
    return out;
}

namespace {

// Matrix of the Mobius map sending (z1, z2, z3) to (0, 1, infinity).
Mobius to_zero_one_inf(const std::array<SpherePoint, 3>& z) {
    const SpherePoint &z1 = z[0], &z2 = z[1], &z3 = z[2];
    if (z1.infinite) return {0.0, z2.z - z3.z, 1.0, -z3.z};       // (z2-z3)/(t-z3)
    if (z2.infinite) return {1.0, -z1.z, 1.0, -z3.z};             // (t-z1)/(t-z3)
    if (z3.infinite) return {1.0, -z1.z, 0.0, z2.z - z1.z};       // (t-z1)/(z2-z1)
    return {z2.z - z3.z, -z1.z * (z2.z - z3.z), z2.z - z1.z, -z3.z * (z2.z - z1.z)};
}

} // namespace

Mobius mobius_from_triples(const std::array<SpherePoint, 3>& z,
                           const std::array<SpherePoint, 3>& w) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (z[static_cast<std::size_t>(i)] == z[static_cast<std::size_t>(j)] ||
                w[static_cast<std::size_t>(i)] == w[static_cast<std::size_t>(j)])
                throw DegenerateTripleError{};
    Mobius mz = to_zero_one_inf(z);
    Mobius mw = to_zero_one_inf(w);
    Mobius winv{mw.d, -mw.b, -mw.c, mw.a};
    return (winv * mz).normalized();
}

NumPoly Witness::pullback(const NumPoly& f) const {
    NumPoly px, py;
    if (auto* m = std::get_if<Mobius>(&map)) {
        px.add_term({1, 0}, m->d);
        px.add_term({0, 1}, m->c);
        py.add_term({1, 0}, m->b);
        py.add_term({0, 1}, m->a);
    } else if (auto* a = std::get_if<AffineMap>(&map)) {
        px.add_term({1, 0}, 1.0);
        py.add_term({0, 1}, a->a);
        py.add_term({stratum_q, 0}, a->b);
    } else {
        px.add_term({1, 0}, 1.0);
        py.add_term({0, 1}, scaling_root);
    }
    return f.subst(px, py);
}

std::string Witness::plane_map_text() const {
    if (auto* m = std::get_if<Mobius>(&map))
        return "T(x,y) = (" + fmt_complex(m->d) + "*x + " + fmt_complex(m->c) + "*y, " +
               fmt_complex(m->b) + "*x + " + fmt_complex(m->a) + "*y)";
    if (auto* a = std::get_if<AffineMap>(&map))
        return "T(x,y) = (x, " + fmt_complex(a->a) + "*y + " + fmt_complex(a->b) + "*x^" +
               std::to_string(stratum_q) + ")";
    return "T(x,y) = (x, " + fmt_complex(scaling_root) + "*y)";
}

NumPoly curve_poly(const CurveType& curve) {
    NumPoly acc = NumPoly::constant(1.0);
    if (curve.kind == StratumKind::Homogeneous) {
        for (auto& l : curve.lambdas) {
            NumPoly f;
            if (l.infinite) {
                f.add_term({1, 0}, 1.0);
            } else {
                f.add_term({0, 1}, 1.0);
                f.add_term({1, 0}, -l.z);
            }
            acc = acc * f;
        }
        return acc;
    }
    std::int64_t yexp = (curve.kind == StratumKind::PQ) ? curve.p : 1;
    acc = NumPoly::monomial({curve.flag_m, curve.flag_k}, 1.0);
    for (auto& l : curve.lambdas) {
        NumPoly f;
        f.add_term({0, yexp}, 1.0);
        f.add_term({curve.q, 0}, -l.z);
        acc = acc * f;
    }
    return acc;
}

namespace {

WitnessCheck verify_numeric(const Witness& w, const NumPoly& fs, const NumPoly& ft, double tol) {
    NumPoly pulled = w.pullback(ft);
    NumPoly want = w.alpha * fs;
    double scale = 0;
    for (auto& [e, c] : want.terms()) scale = std::max(scale, std::abs(c));
    for (auto& [e, c] : pulled.terms()) scale = std::max(scale, std::abs(c));
    if (scale == 0) scale = 1;
    double resid = 0;
    NumPoly diff = pulled - want;
    for (auto& [e, c] : diff.terms()) resid = std::max(resid, std::abs(c));
    resid /= scale;
    return {resid <= tol, resid};
}

std::complex<double> alpha_from(const NumPoly& pulled, const NumPoly& fs) {
    Exp2 best{0, 0};
    double mag = -1;
    for (auto& [e, c] : fs.terms())
        if (std::abs(c) > mag) {
            mag = std::abs(c);
            best = e;
        }
    if (mag <= 0) return 1.0;
    return pulled.coeff(best) / fs.coeff(best);
}

} // namespace

WitnessCheck verify_witness(const Witness& w, const NumPoly& f_source, const NumPoly& f_target,
                            double tol) {
    return verify_numeric(w, f_source, f_target, tol);
}

WitnessCheck verify_witness(const Witness& w, const BiPoly& f_source, const BiPoly& f_target,
                            double tol) {
    return verify_numeric(w, to_numeric(f_source), to_numeric(f_target), tol);
}

Witness fit_alpha(Witness w, const BiPoly& f_source, const BiPoly& f_target) {
    return fit_alpha(std::move(w), to_numeric(f_source), to_numeric(f_target));
}

Witness fit_alpha(Witness w, const NumPoly& f_source, const NumPoly& f_target) {
    NumPoly pulled = w.pullback(f_target);
    w.alpha = alpha_from(pulled, f_source);
    return w;
}

namespace {

constexpr double kCleanFactor = 0.1;  // residual <= 0.1*tol: clean match
constexpr double kRejectFactor = 10.; // residual >= 10*tol: clean mismatch

struct Candidate {
    GroupElement map;
    MatchResult match;
};

// Reserve points used to complete under-determined triples.
const std::array<SpherePoint, 6> kReserve = {
    SpherePoint::finite({0.0, 0.0}), SpherePoint::finite({1.0, 0.0}), SpherePoint::inf(),
    SpherePoint::finite({2.0, 0.0}), SpherePoint::finite({-1.0, 0.0}),
    SpherePoint::finite({0.0, 1.0})};

bool contains(const std::vector<SpherePoint>& v, const SpherePoint& p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}

Mobius small_case_mobius(const std::vector<SpherePoint>& src, const std::vector<SpherePoint>& dst) {
    std::array<SpherePoint, 3> zs{}, ws{};
    std::size_t have = src.size();
    for (std::size_t i = 0; i < have; ++i) {
        zs[i] = src[i];
        ws[i] = dst[i];
    }
    std::size_t at = have;
    for (auto& r : kReserve) {
        if (at == 3) break;
        if (!contains(src, r) && !contains(dst, r)) {
            zs[at] = r;
            ws[at] = r;
            ++at;
        }
    }
    return mobius_from_triples(zs, ws);
}

Witness make_witness(const CurveType& A, const CurveType& B, GroupElement g,
                     std::vector<int> perm) {
    Witness w;
    w.map = std::move(g);
    w.permutation = std::move(perm);
    w.stratum_p = A.p;
    w.stratum_q = A.q;
    if (auto* s = std::get_if<ScalingMap>(&w.map))
        w.scaling_root = std::pow(s->a, 1.0 / static_cast<double>(A.p));
    NumPoly fs = curve_poly(A);
    NumPoly ft = curve_poly(B);
    w.alpha = alpha_from(w.pullback(ft), fs);
    WitnessCheck chk = verify_numeric(w, fs, ft, 1e-6);
    if (!chk.ok)
        throw Error("internal check failure: constructed witness does not verify, residual " +
                    std::to_string(chk.residual));
    return w;
}

EquivalenceVerdict accept(const CurveType& A, const CurveType& B, GroupElement g,
                          std::vector<int> perm) {
    EquivalenceVerdict v;
    v.equivalent = true;
    v.witness = make_witness(A, B, std::move(g), std::move(perm));
    return v;
}

// Shared candidate resolution: pick the cleanest match; raise the ambiguity
// error when the best candidate falls in the gray zone around the tolerance.
EquivalenceVerdict resolve_candidates(const CurveType& A, const CurveType& B,
                                      std::vector<Candidate>& cands, double tol) {
    const Candidate* best = nullptr;
    for (auto& c : cands)
        if (!best || c.match.worst < best->match.worst) best = &c;
    if (best && best->match.worst <= kCleanFactor * tol)
        return accept(A, B, best->map, best->match.perm);
    if (best && best->match.worst < kRejectFactor * tol)
        throw ToleranceAmbiguityError(best->match.worst);
    EquivalenceVerdict v;
    v.equivalent = false;
    v.certificate = "no group element maps the configurations onto each other";
    return v;
}

} // namespace

EquivalenceVerdict decide_equivalence(const CurveType& A, const CurveType& B, double tol) {
    EquivalenceVerdict v;
    if (A.kind != B.kind || A.p != B.p || A.q != B.q) {
        v.certificate = "stratum (p,q) mismatch";
        return v;
    }
    if (A.flag_m != B.flag_m || A.flag_k != B.flag_k) {
        v.certificate = "Z2 flag mismatch";
        return v;
    }
    if (A.n_points() != B.n_points()) {
        v.certificate = "branch count mismatch";
        return v;
    }
    std::size_t n = A.lambdas.size();

    if (A.kind == StratumKind::Homogeneous) {
        if (n <= 3) {
            Mobius g = small_case_mobius(A.lambdas, B.lambdas);
            std::vector<int> perm(n);
            for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
            return accept(A, B, g, std::move(perm));
        }
        std::array<SpherePoint, 3> src{A.lambdas[0], A.lambdas[1], A.lambdas[2]};
        std::vector<Candidate> cands;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    Mobius g = mobius_from_triples(src, {B.lambdas[i], B.lambdas[j], B.lambdas[k]});
                    std::vector<SpherePoint> images;
                    images.reserve(n);
                    for (auto& l : A.lambdas) images.push_back(g.apply(l));
                    auto m = match_multisets(images, B.lambdas);
                    if (m.worst <= kCleanFactor * tol)
                        return accept(A, B, g, std::move(m.perm));
                    cands.push_back({g, std::move(m)});
                }
        return resolve_candidates(A, B, cands, tol);
    }

    if (A.kind == StratumKind::OneQ) {
        if (n == 0) return accept(A, B, AffineMap{}, {});
        if (n == 1)
            return accept(A, B, AffineMap{1.0, B.lambdas[0].z - A.lambdas[0].z}, {0});
        if (n == 2) {
            std::complex<double> a =
                (B.lambdas[1].z - B.lambdas[0].z) / (A.lambdas[1].z - A.lambdas[0].z);
            AffineMap g{a, B.lambdas[0].z - a * A.lambdas[0].z};
            return accept(A, B, g, {0, 1});
        }
        std::vector<Candidate> cands;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                std::complex<double> a =
                    (B.lambdas[j].z - B.lambdas[i].z) / (A.lambdas[1].z - A.lambdas[0].z);
                AffineMap g{a, B.lambdas[i].z - a * A.lambdas[0].z};
                std::vector<SpherePoint> images;
                images.reserve(n);
                for (auto& l : A.lambdas) images.push_back(SpherePoint::finite(g.apply(l.z)));
                auto m = match_multisets(images, B.lambdas);
                if (m.worst <= kCleanFactor * tol) return accept(A, B, g, std::move(m.perm));
                cands.push_back({g, std::move(m)});
            }
        return resolve_candidates(A, B, cands, tol);
    }

    // (p,q) stratum: candidates a = mu_j / lambda_1.
    if (n == 0) return accept(A, B, ScalingMap{1.0}, {});
    if (n == 1)
        return accept(A, B, ScalingMap{B.lambdas[0].z / A.lambdas[0].z}, {0});
    std::vector<Candidate> cands;
    for (std::size_t j = 0; j < n; ++j) {
        ScalingMap g{B.lambdas[j].z / A.lambdas[0].z};
        std::vector<SpherePoint> images;
        images.reserve(n);
        for (auto& l : A.lambdas) images.push_back(SpherePoint::finite(g.apply(l.z)));
        auto m = match_multisets(images, B.lambdas);
        if (m.worst <= kCleanFactor * tol) return accept(A, B, g, std::move(m.perm));
        cands.push_back({g, std::move(m)});
    }
    return resolve_candidates(A, B, cands, tol);
}

namespace {

double round7(double v) {
    double r = std::round(v * 1e7) / 1e7;
    return r == 0.0 ? 0.0 : r;
}

using Tuple = std::vector<std::pair<double, double>>;

Tuple rounded_sorted(std::vector<std::complex<double>> values) {
    Tuple t;
    t.reserve(values.size());
    for (auto& v : values) t.push_back({round7(v.real()), round7(v.imag())});
    std::sort(t.begin(), t.end());
    return t;
}

void keep_min(std::optional<Tuple>& best, Tuple cand) {
    if (!best || cand < *best) best = std::move(cand);
}

} // namespace

std::string canonical_fingerprint(const CurveType& A) {
    std::string head;
    switch (A.kind) {
        case StratumKind::Homogeneous: head = "H"; break;
        case StratumKind::OneQ: head = "Q"; break;
        case StratumKind::PQ: head = "P"; break;
    }
    head += "|p=" + std::to_string(A.p) + ",q=" + std::to_string(A.q);
    head += "|m=" + std::to_string(A.flag_m) + ",k=" + std::to_string(A.flag_k);
    head += "|n=" + std::to_string(A.lambdas.size()) + "|";

    std::size_t n = A.lambdas.size();
    std::optional<Tuple> best;

    if (A.kind == StratumKind::Homogeneous) {
        if (n <= 3) best = Tuple{};
        for (std::size_t i = 0; n > 3 && i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    Mobius g = mobius_from_triples(
                        {A.lambdas[i], A.lambdas[j], A.lambdas[k]},
                        {SpherePoint::finite(0.0), SpherePoint::finite(1.0), SpherePoint::inf()});
                    std::vector<std::complex<double>> rest;
                    for (std::size_t t = 0; t < n; ++t) {
                        if (t == i || t == j || t == k) continue;
                        SpherePoint img = g.apply(A.lambdas[t]);
                        rest.push_back(img.infinite
                                           ? std::complex<double>(std::numeric_limits<double>::max(), 0)
                                           : img.z);
                    }
                    keep_min(best, rounded_sorted(std::move(rest)));
                }
    } else if (A.kind == StratumKind::OneQ) {
        if (n <= 2) best = Tuple{};
        for (std::size_t i = 0; n > 2 && i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                std::complex<double> den = A.lambdas[j].z - A.lambdas[i].z;
                std::vector<std::complex<double>> rest;
                for (std::size_t t = 0; t < n; ++t) {
                    if (t == i || t == j) continue;
                    rest.push_back((A.lambdas[t].z - A.lambdas[i].z) / den);
                }
                keep_min(best, rounded_sorted(std::move(rest)));
            }
    } else {
        if (n <= 1) best = Tuple{};
        for (std::size_t i = 0; n > 1 && i < n; ++i) {
            std::vector<std::complex<double>> rest;
            for (std::size_t t = 0; t < n; ++t) {
                if (t == i) continue;
                rest.push_back(A.lambdas[t].z / A.lambdas[i].z);
            }
            keep_min(best, rounded_sorted(std::move(rest)));
        }
    }

    std::string out = head;
    if (best)
        for (auto& [re, im] : *best) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "(%.7f,%.7f);", re, im);
            out += buf;
        }
    return out;
}

} // namespace qhmod
