#include <benchmark/benchmark.h>

#include <periorb/classify.hpp>
#include <periorb/dold.hpp>

using namespace periorb;

static void BM_DualSpaceOrder(benchmark::State& state) {
    // displacement of the sixth iterate of the coupled example: the fast
    // path declines, so this times the Macaulay ladder end to end
    GermMap f = builtin_example("e2", 2);
    GermMap f6 = iterate(f, 6);
    GermMap disp = GermMap::identity(f.context(), f.degree()) - f6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dual_space_zero_order(disp, disp.degree()));
    }
}
BENCHMARK(BM_DualSpaceOrder);

static void BM_CroninOrder(benchmark::State& state) {
    auto ctx = CycloContext::get(2);
    Jet2 c1(ctx, 16), c2(ctx, 16);
    c1.set_coeff(1, 0, CycloNum(ctx, Rational(-1)));
    c1.set_coeff(3, 0, CycloNum::one(ctx));
    c2.set_coeff(0, 1, CycloNum(ctx, Rational(-1)));
    c2.set_coeff(0, 3, CycloNum::one(ctx));
    GermMap f(std::move(c1), std::move(c2));
    GermMap disp = GermMap::identity(ctx, 16) - iterate(f, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cronin_zero_order(disp));
    }
}
BENCHMARK(BM_CroninOrder);

static void BM_FullReport(benchmark::State& state) {
    GermMap f = builtin_example("e2", static_cast<long>(state.range(0)));
    for (auto _ : state) {
        DoldEngine engine(f, 6);
        benchmark::DoNotOptimize(engine.report(6));
    }
}
BENCHMARK(BM_FullReport)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
