// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "qhmod/foliation.hpp"
#include "qhmod/moduli.hpp"
#include "qhmod/parser.hpp"
#include "qhmod/quasihom.hpp"
#include "qhmod/resolution.hpp"
#include "support/gen.hpp"

using namespace qhmod;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool lambda_multiset_close(std::vector<std::complex<double>> got,
                           const std::vector<ExactComplex>& expected, double rel) {
    if (got.size() != expected.size()) return false;
    for (auto& e : expected) {
        std::complex<double> want = e.to_std();
        double best = 1e300;
        std::size_t at = got.size();
        for (std::size_t i = 0; i < got.size(); ++i)
            if (std::abs(got[i] - want) < best) {
                best = std::abs(got[i] - want);
                at = i;
            }
        if (at == got.size() || best > rel * std::max(1.0, std::abs(want))) return false;
        got.erase(got.begin() + static_cast<std::ptrdiff_t>(at));
    }
    return true;
}

// ---------------------------------------------------------------- criterion 1

void criterion_decomposition_round_trip() {
    auto t0 = std::chrono::steady_clock::now();
    gen::Rng rng(10001);
    std::uniform_int_distribution<int> kd(1, 5), md(0, 2);
    int bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::int64_t p, q;
        do {
            auto pr = gen::coprime_pair(rng, 9);
            p = pr.first;
            q = pr.second;
        } while (p == q);
        int k = kd(rng);
        std::int64_t m = md(rng), n = md(rng);
        ExactComplex mu = gen::nonzero_gaussian_rational(rng, 20, 20);
        auto lambdas = gen::distinct_lambdas(rng, k, 20, 20);
        BiPoly f = gen::expand_exact(mu, m, n, p, q, lambdas);
        try {
            QHNormalForm nf = decompose(f);
            bool ok = nf.mu == mu && nf.m == m && nf.n == n && nf.weights.p == p &&
                      nf.weights.q == q && !nf.weights.swapped &&
                      lambda_multiset_close(nf.lambdas, lambdas, 1e-8);
            if (!ok) ++bad;
        } catch (const Error&) {
            ++bad;
        }
    }
    double dt = seconds_since(t0);
    std::ostringstream os;
    os << "decomposition round trip, 1000 random normal forms, " << bad << " mismatches, "
       << dt << " s";
    report(1, bad == 0 && dt < 30.0, os.str());
}

// ---------------------------------------------------------------- criterion 2

std::vector<std::pair<std::int64_t, std::int64_t>> all_pairs_up_to_30() {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (std::int64_t q = 1; q <= 30; ++q) pairs.push_back({1, q});
    for (std::int64_t p = 2; p < 30; ++p)
        for (std::int64_t q = p + 1; q <= 30; ++q)
            if (std::gcd(p, q) == 1) pairs.push_back({p, q});
    return pairs;
}

bool contractible(std::vector<std::int64_t> w) {
    while (!w.empty()) {
        auto it = std::find(w.begin(), w.end(), -1);
        if (it == w.end()) return false;
        std::size_t i = static_cast<std::size_t>(it - w.begin());
        if (i > 0) w[i - 1] += 1;
        if (i + 1 < w.size()) w[i + 1] += 1;
        w.erase(it);
    }
    return true;
}

void criterion_resolution_structure() {
    auto t0 = std::chrono::steady_clock::now();
    gen::Rng rng(10002);
    int bad = 0;
    for (auto [p, q] : all_pairs_up_to_30()) {
        EuclidChain chain = euclid_chain(p, q);
        QHNormalForm nf;
        nf.weights = {p, q, p * q, false, false};
        for (auto z : gen::separated_points(rng, 2)) nf.lambdas.push_back(z);
        DualGraph g = simulate_resolution(nf);

        bool ok = static_cast<std::int64_t>(g.components.size()) == chain.blowup_count();
        ok = ok && g.edges.size() + 1 == g.components.size();
        for (auto& c : g.components) ok = ok && g.neighbors(c.id).size() <= 2;
        int minus_ones = 0;
        std::vector<std::int64_t> chain_w, birth_w(g.components.size());
        for (auto& c : g.components) {
            chain_w.push_back(c.self_int);
            birth_w[static_cast<std::size_t>(c.birth - 1)] = c.self_int;
            minus_ones += (c.self_int == -1) ? 1 : 0;
        }
        ok = ok && minus_ones == 1;
        ok = ok && contractible(chain_w);
        ok = ok && birth_w == chain_weights_formula(chain);
        if (!ok) ++bad;
    }
    double dt = seconds_since(t0);
    std::ostringstream os;
    os << "resolution structure over all coprime pairs up to 30, " << bad << " failures, " << dt
       << " s";
    report(2, bad == 0 && dt < 10.0, os.str());
}

// ---------------------------------------------------------------- criterion 3

void criterion_cusp_golden() {
    DualGraph g = simulate_resolution(decompose(parse_poly("y^2-x^3")));
    bool ok = g.components.size() == 3;
    if (ok) {
        std::multiset<std::int64_t> weights;
        for (auto& c : g.components) weights.insert(c.self_int);
        ok = ok && weights == std::multiset<std::int64_t>{-3, -2, -1};
        ok = ok && g.by_id(2).self_int == -1 && g.by_id(2).principal;
        int attach = 0;
        for (auto& c : g.components)
            for (auto& a : c.attachments) attach += static_cast<int>(a.mult);
        ok = ok && attach == 1 && g.by_id(2).attachments.size() == 1;
        ok = ok && g.curve_order(g.by_id(1)) == 2 && g.curve_order(g.by_id(2)) == 6 &&
             g.curve_order(g.by_id(3)) == 3;
    }
    report(3, ok, "cusp golden case: weights {-3,-2,-1}, principal -1, orders (2,6,3)");
}

// ---------------------------------------------------------------- criterion 4

GroupElement random_group(gen::Rng& rng, StratumKind kind) {
    auto draw = [&] {
        while (true) {
            auto z = gen::random_unit_disk(rng, 1.5);
            if (std::abs(z) > 0.2) return z;
        }
    };
    if (kind == StratumKind::Homogeneous) {
        while (true) {
            Mobius m{draw(), draw(), draw(), draw()};
            if (std::abs(m.a * m.d - m.b * m.c) > 0.2) return m.normalized();
        }
    }
    if (kind == StratumKind::OneQ) return AffineMap{draw(), gen::random_unit_disk(rng, 1.0)};
    return ScalingMap{draw()};
}

CurveType random_curve(gen::Rng& rng, StratumKind kind, int n) {
    CurveType c;
    c.kind = kind;
    switch (kind) {
        case StratumKind::Homogeneous: c.p = c.q = 1; break;
        case StratumKind::OneQ: c.p = 1; c.q = 3; break;
        case StratumKind::PQ: c.p = 2; c.q = 5; break;
    }
    for (auto z : gen::separated_points(rng, n)) c.lambdas.push_back(SpherePoint::finite(z));
    return c;
}

bool images_ok(const CurveType& c) {
    for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
        if (c.lambdas[i].infinite) continue;
        if (std::abs(c.lambdas[i].z) > 40.0) return false;
        for (std::size_t j = i + 1; j < c.lambdas.size(); ++j)
            if (!c.lambdas[j].infinite && std::abs(c.lambdas[i].z - c.lambdas[j].z) < 1e-3)
                return false;
    }
    return true;
}

void criterion_moduli_orbits() {
    gen::Rng rng(10004);
    std::uniform_int_distribution<int> nd(4, 7);
    int bad_orbit = 0, done = 0;
    while (done < 500) {
        StratumKind kind = static_cast<StratumKind>(done % 3);
        int n = (kind == StratumKind::Homogeneous) ? nd(rng) : std::max(2, nd(rng) - 3);
        CurveType a = random_curve(rng, kind, n);
        CurveType b = group_apply(random_group(rng, kind), a);
        if (!images_ok(b)) continue;
        ++done;
        try {
            auto v = decide_equivalence(a, b);
            if (!v.equivalent) {
                ++bad_orbit;
                continue;
            }
            auto chk = verify_witness(*v.witness, curve_poly(a), curve_poly(b));
            if (chk.residual >= 1e-8) ++bad_orbit;
        } catch (const Error&) {
            ++bad_orbit;
        }
    }

    int bad_sep = 0;
    done = 0;
    std::uniform_real_distribution<double> off(0.1, 1.0), ang(0, 6.28);
    while (done < 500) {
        StratumKind kind = static_cast<StratumKind>(done % 3);
        int n = (kind == StratumKind::Homogeneous) ? 4 : (kind == StratumKind::OneQ) ? 3 : 2;
        CurveType a = random_curve(rng, kind, n);
        CurveType b = a;
        b.lambdas[0].z += std::polar(off(rng), ang(rng));
        if (!images_ok(b)) continue;
        ++done;
        try {
            if (decide_equivalence(a, b).equivalent) ++bad_sep;
        } catch (const ToleranceAmbiguityError&) {
            ++bad_sep;
        }
    }

    int bad_small = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> n11(0, 3), n1q(0, 2);
        CurveType a = random_curve(rng, StratumKind::Homogeneous, n11(rng));
        CurveType b = random_curve(rng, StratumKind::Homogeneous, static_cast<int>(a.lambdas.size()));
        if (!decide_equivalence(a, b).equivalent) ++bad_small;

        CurveType c = random_curve(rng, StratumKind::OneQ, n1q(rng));
        CurveType d = random_curve(rng, StratumKind::OneQ, static_cast<int>(c.lambdas.size()));
        if (!decide_equivalence(c, d).equivalent) ++bad_small;

        CurveType e = random_curve(rng, StratumKind::PQ, 1);
        CurveType f = random_curve(rng, StratumKind::PQ, 1);
        if (!decide_equivalence(e, f).equivalent) ++bad_small;
    }

    std::ostringstream os;
    os << "moduli orbits: " << bad_orbit << "/500 orbit failures, " << bad_sep
       << "/500 separation failures, " << bad_small << "/300 small-case failures";
    report(4, bad_orbit == 0 && bad_sep == 0 && bad_small == 0, os.str());
}

// ---------------------------------------------------------------- criterion 5

void criterion_fingerprint_soundness() {
    gen::Rng rng(10005);
    int mismatches = 0, done = 0;
    while (done < 200) {
        StratumKind kind = static_cast<StratumKind>(done % 3);
        int n = (kind == StratumKind::Homogeneous) ? 5 : 4;
        CurveType a = random_curve(rng, kind, n);
        CurveType b = (done % 2 == 0) ? group_apply(random_group(rng, kind), a)
                                      : random_curve(rng, kind, n);
        if (!images_ok(b)) continue;
        ++done;
        try {
            bool eq = decide_equivalence(a, b).equivalent;
            bool fp = canonical_fingerprint(a) == canonical_fingerprint(b);
            if (eq != fp) ++mismatches;
        } catch (const ToleranceAmbiguityError&) {
            ++mismatches;
        }
    }
    std::ostringstream os;
    os << "fingerprint soundness on 200 pairs, " << mismatches << " disagreements";
    report(5, mismatches == 0, os.str());
}

// ---------------------------------------------------------------- criterion 6

void criterion_index_sums() {
    gen::Rng rng(10006);
    int bad = 0;
    for (auto [p, q] : all_pairs_up_to_30()) {
        std::uniform_int_distribution<int> kd(1, 3), md(0, 1);
        QHNormalForm nf;
        nf.weights = {p, q, p * q, false, false};
        nf.m = md(rng);
        nf.n = md(rng);
        for (auto z : gen::separated_points(rng, kd(rng))) nf.lambdas.push_back(z);
        DualGraph g = simulate_resolution(nf);

        IndexReport h = index_sum_check(g, FoliationModel::Hamiltonian);
        bool ok = h.all_pass;
        for (auto& c : h.components) ok = ok && !c.skipped_dicritical;

        IndexReport f = index_sum_check(g, FoliationModel::Fibration);
        ok = ok && f.all_pass;
        int skipped = 0;
        for (auto& c : f.components)
            if (c.skipped_dicritical) {
                ++skipped;
                ok = ok && g.by_id(c.id).principal;
            }
        ok = ok && skipped == 1;
        if (!ok) ++bad;
    }

    // the smallest case: one blowup of a smooth branch
    DualGraph g1 = simulate_resolution(decompose(parse_poly("y")));
    IndexReport r1 = index_sum_check(g1, FoliationModel::Hamiltonian);
    bool smallest = r1.components.size() == 1 && r1.components[0].sum == Rational(-1) &&
                    r1.components[0].pass;

    std::ostringstream os;
    os << "Camacho-Sad sums over all coprime pairs up to 30, " << bad
       << " failures; smallest case " << (smallest ? "ok" : "wrong");
    report(6, bad == 0 && smallest, os.str());
}

// ---------------------------------------------------------------- criterion 7

void criterion_eq4_normalization() {
    gen::Rng rng(10007);
    std::uniform_int_distribution<int> ints(1, 5);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 2);
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SeriesBivariate u(12);
        u.set_coeff(0, 0, 1.0);
        for (int d = 1; d <= 12; ++d)
            for (int j = 0; j <= d; ++j) u.set_coeff(d - j, j, 0.25 * gen::random_unit_disk(rng));
        // Non-resonant with margin: |nu s - mu r| >= 1. Near-resonant data blows
        // the unit powers s/(nu s - mu r) past what double precision can hold.
        std::int64_t r = ints(rng), s = ints(rng);
        std::complex<double> nu, mu;
        do {
            nu = {static_cast<double>(num(rng)) / static_cast<double>(den(rng)), 0};
            mu = {static_cast<double>(num(rng)) / static_cast<double>(den(rng)), 0};
        } while (std::abs(nu * static_cast<double>(s) - mu * static_cast<double>(r)) < 1.0);
        auto res = simult_normalize(u, nu, mu, r, s, 12);
        if (!(res.residual1 < 1e-10 && res.residual2 < 1e-10)) ++bad;
    }
    std::ostringstream os;
    os << "simultaneous normalization residuals at order 12, " << bad << "/100 over 1e-10";
    report(7, bad == 0, os.str());
}

// ---------------------------------------------------------------- criterion 8

void criterion_isotropy() {
    int bad = 0, checked = 0;
    for (std::int64_t nu = -6; nu <= 6; ++nu)
        for (std::int64_t mu = -6; mu <= 6; ++mu)
            for (std::int64_t r = -4; r <= 4; ++r)
                for (std::int64_t s = -4; s <= 4; ++s) {
                    std::int64_t det = nu * s - mu * r;
                    if (det == 0 || std::abs(det) > 12) continue;
                    ++checked;
                    std::int64_t D = std::abs(det);
                    std::int64_t count = 0;
                    for (std::int64_t a = 0; a < D; ++a)
                        for (std::int64_t b = 0; b < D; ++b) {
                            bool e1 = ((nu * a + mu * b) % D + D) % D == 0;
                            bool e2 = ((r * a + s * b) % D + D) % D == 0;
                            if (e1 && e2) ++count;
                        }
                    if (torus_isotropy_order(nu, mu, r, s) != count) ++bad;
                }
    std::ostringstream os;
    os << "torus isotropy order vs brute force on " << checked << " integer data sets, " << bad
       << " mismatches";
    report(8, bad == 0, os.str());
}

// ---------------------------------------------------------------- criterion 9

std::string run_cli(const std::string& cli, const std::string& args, int* code = nullptr) {
    std::string cmd = cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    if (code) *code = WEXITSTATUS(status);
    return out;
}

void criterion_cli_determinism() {
    const char* cli_env = std::getenv("QHMOD_CLI_BIN");
    if (!cli_env) {
        report(9, false, "QHMOD_CLI_BIN not set");
        return;
    }
    std::string cli = cli_env;
    auto t0 = std::chrono::steady_clock::now();

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "qhmod_acceptance";
    fs::create_directories(dir);
    fs::path corpus = dir / "corpus50.txt";
    {
        std::ofstream out(corpus);
        for (int k = 1; k <= 15; ++k) out << "y^2-" << k << "x^3\n";          // scaling orbit
        for (int k = 1; k <= 10; ++k) out << "(y-" << k << "x)*(y+" << k << "x)\n";
        for (int k = 1; k <= 10; ++k) out << "y^3-" << k << "x^5\n";
        for (int k = 1; k <= 10; ++k) out << "(y-x^2)*(y-" << 2 * k << "x^2)\n";
        out << "x*y*(y^2-x^3)\n";
        out << "x*(y-x)*(y+x)\n";
        out << "y^4-x^6\n";
        out << "x*y\n";
        out << "y-x^7\n";
    }

    bool ok = true;
    std::string a1 = run_cli(cli, "analyze \"y^2-x^3\"");
    std::string a2 = run_cli(cli, "analyze \"y^2-x^3\"");
    ok = ok && !a1.empty() && a1 == a2;

    std::string r1 = run_cli(cli, "resolve \"x*y*(y^2-x^3)\" --format json");
    std::string r2 = run_cli(cli, "resolve \"x*y*(y^2-x^3)\" --format json");
    ok = ok && !r1.empty() && r1 == r2;

    int c1 = 0, c2 = 0, c3 = 0;
    std::string b1 = run_cli(cli, "classify-batch " + corpus.string() + " --jobs 1", &c1);
    std::string b2 = run_cli(cli, "classify-batch " + corpus.string() + " --jobs 4", &c2);
    std::string b3 = run_cli(cli, "classify-batch " + corpus.string() + " --jobs 7", &c3);
    ok = ok && c1 == 0 && c2 == 0 && c3 == 0;
    ok = ok && !b1.empty() && b1 == b2 && b1 == b3;

    double dt = seconds_since(t0);
    std::ostringstream os;
    os << "CLI determinism across repeated runs and worker counts, " << dt << " s";
    report(9, ok && dt < 20.0, os.str());
}

} // namespace

int main() {
    criterion_decomposition_round_trip();
    criterion_resolution_structure();
    criterion_cusp_golden();
    criterion_moduli_orbits();
    criterion_fingerprint_soundness();
    criterion_index_sums();
    criterion_eq4_normalization();
    criterion_isotropy();
    criterion_cli_determinism();
    if (g_failures == 0) std::printf("all acceptance criteria passed\n");
    return g_failures;
}
