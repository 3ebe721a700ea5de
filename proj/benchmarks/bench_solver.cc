#include "common.hh"

#include <hermeig/backtransform.hh>
#include <hermeig/dc_solver.hh>
#include <hermeig/pipeline.hh>
#include <hermeig/tridiag.hh>

#include <benchmark/benchmark.h>

using namespace hermeig;
using namespace hermeig::benchmarks;

static void BM_OneStage(benchmark::State& state) {
    const index_t n = state.range(0);
    ReferenceBackend be;
    DenseHermitian a = hermitian(n, 11);
    for (auto _ : state) benchmark::DoNotOptimize(tridiagonalize_one_stage(a, state.range(1), be));
    be.reset_counts();
    tridiagonalize_one_stage(a, state.range(1), be);
    state.counters["level2_fraction"] = be.counts().level2_fraction();
}
BENCHMARK(BM_OneStage)->Args({512, 8})->Args({512, 32})->Args({1024, 8})->Unit(benchmark::kMillisecond);

static void BM_ReduceToBand(benchmark::State& state) {
    const index_t n = state.range(0);
    ReferenceBackend be;
    DenseHermitian a = hermitian(n, 12);
    for (auto _ : state) benchmark::DoNotOptimize(reduce_to_band(a, state.range(1), be));
    be.reset_counts();
    reduce_to_band(a, state.range(1), be);
    state.counters["level2_fraction"] = be.counts().level2_fraction();
}
BENCHMARK(BM_ReduceToBand)->Args({512, 32})->Args({512, 64})->Args({1024, 64})->Unit(benchmark::kMillisecond);

static void BM_BulgeChase(benchmark::State& state) {
    const index_t n = state.range(0);
    ReferenceBackend be;
    BandReduction br = reduce_to_band(hermitian(n, 13), state.range(1), be);
    for (auto _ : state) benchmark::DoNotOptimize(bulge_chase(br.band));
}
BENCHMARK(BM_BulgeChase)->Args({512, 16})->Args({512, 64})->Unit(benchmark::kMillisecond);

static void BM_DivideAndConquer(benchmark::State& state) {
    const index_t n = state.range(0);
    ReferenceBackend be;
    TridiagResult tr = tridiagonalize_one_stage(hermitian(n, 14), 8, be);
    const EigenSelection sel = state.range(1) == 100 ? EigenSelection::all() : EigenSelection::fraction(0.1);
    for (auto _ : state) benchmark::DoNotOptimize(dc_solve(tr.t, sel, be));
}
BENCHMARK(BM_DivideAndConquer)->Args({512, 100})->Args({512, 10})->Args({1024, 100})->Unit(benchmark::kMillisecond);

static void BM_Backtransform(benchmark::State& state) {
    const index_t n = state.range(0);
    const bool two_stage = state.range(1) != 0;
    ReferenceBackend be;
    DenseHermitian a = hermitian(n, 15);
    TridiagResult tr = two_stage ? tridiagonalize_two_stage(a, 64, be) : tridiagonalize_one_stage(a, 8, be);
    TridiagEigen te = dc_solve(tr.t, EigenSelection::fraction(0.1), be);
    for (auto _ : state) benchmark::DoNotOptimize(backtransform_standard(tr, te.vectors->cview(), be));
}
BENCHMARK(BM_Backtransform)->Args({512, 0})->Args({512, 1})->Unit(benchmark::kMillisecond);

static void BM_SolveGeneralized(benchmark::State& state) {
    const index_t n = state.range(0);
    const Method method = state.range(1) == 1 ? Method::OneStage : Method::TwoStage;
    const EigenSelection sel = state.range(2) == 100 ? EigenSelection::all() : EigenSelection::fraction(0.1);
    ReferenceBackend be;
    DenseHermitian a = hermitian(n, 16);
    DenseHermitian b = definite(n, 17);
    for (auto _ : state) benchmark::DoNotOptimize(solve_generalized(a, b, sel, method, SolverConfig{}, be));
}
BENCHMARK(BM_SolveGeneralized)
    ->ArgsProduct({{256, 512}, {1, 2}, {100, 10}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
