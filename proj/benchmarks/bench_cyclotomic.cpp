#include <benchmark/benchmark.h>

#include <periorb/cyclotomic.hpp>

using namespace periorb;

static void BM_CyclotomicPoly(benchmark::State& state) {
    const long level = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cyclotomic_poly(level));
    }
}
BENCHMARK(BM_CyclotomicPoly)->Arg(12)->Arg(60)->Arg(210);

static void BM_CycloMul(benchmark::State& state) {
    auto ctx = CycloContext::get(state.range(0));
    CycloNum a = CycloNum::zeta_pow(ctx, 1) + CycloNum(ctx, Rational(2, 3));
    CycloNum b = CycloNum::zeta_pow(ctx, ctx->level() - 1) - CycloNum(ctx, Rational(1, 7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_CycloMul)->Arg(6)->Arg(15)->Arg(60);

static void BM_CycloInverse(benchmark::State& state) {
    auto ctx = CycloContext::get(state.range(0));
    CycloNum a = CycloNum::zeta_pow(ctx, 1) + CycloNum(ctx, Rational(2, 3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(a.inverse());
    }
}
BENCHMARK(BM_CycloInverse)->Arg(6)->Arg(15)->Arg(60);
