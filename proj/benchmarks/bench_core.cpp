#include <benchmark/benchmark.h>

#include <random>

#include "asymcyc/charmaps.hpp"
#include "asymcyc/cocyclic.hpp"
#include "asymcyc/fredholm.hpp"
#include "asymcyc/module_io.hpp"
#include "asymcyc/simplex.hpp"

using namespace asymcyc;

static void BM_UniversalCocycle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto c = splx::universal_cocycle(n);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_UniversalCocycle)->Arg(4)->Arg(8)->Arg(12);

static void BM_CocycleWindow(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rep = splx::verify_cocycle_window(N);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_CocycleWindow)->Arg(2)->Arg(4)->Arg(6);

static void BM_ConnesB(benchmark::State& state) {
    splx::SimplexModule m;
    std::mt19937_64 rng(9);
    const int n = static_cast<int>(state.range(0));
    auto x = m.sample(n, rng);
    for (auto _ : state) {
        auto y = connes_B(m, n, x);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_ConnesB)->Arg(4)->Arg(8)->Arg(12);

static void BM_Shuffles(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto s = charm::shuffles(p, p);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_Shuffles)->Arg(3)->Arg(5);

static void BM_JloExact(benchmark::State& state) {
    auto fm = io::builtin_even("index1");
    const int n = static_cast<int>(state.range(0));
    std::vector<fred::Mat> args(static_cast<std::size_t>(n) + 1, io::builtin_idempotent(fm));
    for (auto _ : state) {
        auto v = fred::jlo_bracket(fm, args, fred::JloMode::Exact);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_JloExact)->Arg(1)->Arg(2)->Arg(3);

static void BM_JloQuadrature(benchmark::State& state) {
    auto fm = io::builtin_even("index1");
    const int n = static_cast<int>(state.range(0));
    std::vector<fred::Mat> args(static_cast<std::size_t>(n) + 1, io::builtin_idempotent(fm));
    for (auto _ : state) {
        auto v = fred::jlo_bracket(fm, args, fred::JloMode::Quadrature);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_JloQuadrature)->Arg(1)->Arg(2);

static void BM_SpectralFlow(benchmark::State& state) {
    auto ps = io::builtin_path("generic");
    auto path = [&](double u) { return fred::Mat((1.0 - u) * ps.A0 + u * ps.A1); };
    for (auto _ : state) {
        auto r = fred::spectral_flow_crossings(path, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_SpectralFlow)->Arg(8)->Arg(32);

static void BM_ExpDividedDifference(benchmark::State& state) {
    std::vector<double> pts(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = -0.37 * static_cast<double>(i % 5);
    for (auto _ : state) {
        double v = fred::exp_divided_difference(pts);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_ExpDividedDifference)->Arg(5)->Arg(9)->Arg(17);

BENCHMARK_MAIN();
