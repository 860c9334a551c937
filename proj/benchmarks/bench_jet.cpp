#include <benchmark/benchmark.h>

#include <periorb/classify.hpp>

using namespace periorb;

static void BM_ComposeExample(benchmark::State& state) {
    GermMap f = builtin_example("e2", 2).with_degree(static_cast<int>(state.range(0)));
    GermMap f2 = compose(f, f);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(f, f2));
    }
}
BENCHMARK(BM_ComposeExample)->Arg(16)->Arg(32);

static void BM_IterateExample(benchmark::State& state) {
    GermMap f = builtin_example("e2", 2).with_degree(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(iterate(f, 6));
    }
}
BENCHMARK(BM_IterateExample)->Arg(16)->Arg(32);

static void BM_Invert(benchmark::State& state) {
    auto ctx = CycloContext::get(6);
    const int D = static_cast<int>(state.range(0));
    GermMap h = GermMap::identity(ctx, D);
    h.component(0).set_coeff(0, 2, CycloNum::one(ctx));
    h.component(1).set_coeff(2, 1, CycloNum(ctx, Rational(1, 2)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(invert(h));
    }
}
BENCHMARK(BM_Invert)->Arg(12)->Arg(24);
