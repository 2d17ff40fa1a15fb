#include <benchmark/benchmark.h>

#include <random>

#include "qhmod/foliation.hpp"
#include "qhmod/moduli.hpp"
#include "qhmod/parser.hpp"
#include "qhmod/quasihom.hpp"
#include "qhmod/resolution.hpp"

using namespace qhmod;

namespace {

BiPoly sample_curve(int k) {
    BiPoly acc = BiPoly::constant(ExactComplex(1));
    for (int j = 1; j <= k; ++j) {
        BiPoly f;
        f.add_term({0, 2}, ExactComplex(1));
        f.add_term({3, 0}, ExactComplex(-j));
        acc = acc * f;
    }
    return acc;
}

CurveType sample_config(int n) {
    CurveType c;
    c.kind = StratumKind::Homogeneous;
    c.p = c.q = 1;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2, 2);
    while (static_cast<int>(c.lambdas.size()) < n) {
        std::complex<double> z{u(rng), u(rng)};
        bool ok = true;
        for (auto& o : c.lambdas) ok = ok && std::abs(o.z - z) > 0.05;
        if (ok) c.lambdas.push_back(SpherePoint::finite(z));
    }
    return c;
}

void BM_parse(benchmark::State& state) {
    std::string text = format_poly(sample_curve(4));
    for (auto _ : state) benchmark::DoNotOptimize(parse_poly(text));
}
BENCHMARK(BM_parse);

void BM_decompose(benchmark::State& state) {
    BiPoly f = sample_curve(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(decompose(f));
}
BENCHMARK(BM_decompose)->Arg(2)->Arg(4)->Arg(6);

void BM_simulate_resolution(benchmark::State& state) {
    QHNormalForm nf;
    nf.weights = {static_cast<std::int64_t>(state.range(0)),
                  static_cast<std::int64_t>(state.range(1)), 0, false, false};
    nf.lambdas = {{1.0, 0.0}, {2.0, 0.5}};
    for (auto _ : state) benchmark::DoNotOptimize(simulate_resolution(nf));
}
BENCHMARK(BM_simulate_resolution)->Args({2, 3})->Args({13, 21})->Args({13, 34});

void BM_decide_equivalence(benchmark::State& state) {
    CurveType a = sample_config(static_cast<int>(state.range(0)));
    Mobius g{{1.1, 0.2}, {0.3, 0.0}, {-0.2, 0.1}, {0.9, 0.0}};
    CurveType b = group_apply(g.normalized(), a);
    for (auto _ : state) benchmark::DoNotOptimize(decide_equivalence(a, b));
}
BENCHMARK(BM_decide_equivalence)->Arg(4)->Arg(6)->Arg(8);

void BM_fingerprint(benchmark::State& state) {
    CurveType a = sample_config(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(canonical_fingerprint(a));
}
BENCHMARK(BM_fingerprint)->Arg(4)->Arg(6)->Arg(8);

void BM_index_sum_check(benchmark::State& state) {
    QHNormalForm nf;
    nf.weights = {13, 34, 0, false, false};
    nf.lambdas = {{1.0, 0.0}, {2.0, 0.5}, {-1.0, 1.0}};
    DualGraph g = simulate_resolution(nf);
    for (auto _ : state)
        benchmark::DoNotOptimize(index_sum_check(g, FoliationModel::Hamiltonian));
}
BENCHMARK(BM_index_sum_check);

void BM_simult_normalize(benchmark::State& state) {
    SeriesBivariate u(static_cast<int>(state.range(0)));
    u.set_coeff(0, 0, 1.0);
    u.set_coeff(1, 1, 0.3);
    u.set_coeff(2, 0, -0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simult_normalize(u, {1, 0}, {2, 0}, 1, 3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_simult_normalize)->Arg(8)->Arg(12)->Arg(16);

} // namespace

BENCHMARK_MAIN();
