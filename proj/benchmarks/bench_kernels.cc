#include "common.hh"

#include <hermeig/backend.hh>
#include <hermeig/cholesky.hh>
#include <hermeig/std_transform.hh>

#include <benchmark/benchmark.h>

using namespace hermeig;
using namespace hermeig::benchmarks;

static void BM_Gemm(benchmark::State& state, const char* backend_name) {
    const index_t n = state.range(0);
    auto be = make_backend(backend_name);
    Matrix<cplx> a = gaussian(n, n, 1), b = gaussian(n, n, 2), c(n, n);
    for (auto _ : state) {
        be->multiply_accumulate(1.0, Op::NoTrans, a.cview(), Op::NoTrans, b.cview(), 0.0, c.view());
        benchmark::DoNotOptimize(c.data());
    }
    state.counters["flops"] = benchmark::Counter(8.0 * n * n * n, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK_CAPTURE(BM_Gemm, reference, "reference")->Arg(128)->Arg(256)->Arg(512);
BENCHMARK_CAPTURE(BM_Gemm, loops, "loops")->Arg(64)->Arg(128);

static void BM_Her2k(benchmark::State& state) {
    const index_t n = state.range(0);
    const index_t k = state.range(1);
    ReferenceBackend be;
    Matrix<cplx> v = gaussian(n, k, 3), w = gaussian(n, k, 4);
    Matrix<cplx> c = hermitian(n, 5).matrix();
    for (auto _ : state) {
        be.hermitian_rank2k_update(-1.0, v.cview(), w.cview(), 1.0, c.view());
        benchmark::DoNotOptimize(c.data());
    }
}
BENCHMARK(BM_Her2k)->Args({512, 32})->Args({512, 64})->Args({1024, 64});

static void BM_Cholesky(benchmark::State& state) {
    const index_t n = state.range(0);
    const index_t block = state.range(1);
    ReferenceBackend be;
    DenseHermitian b = definite(n, 6);
    for (auto _ : state) benchmark::DoNotOptimize(cholesky_factor(b, block, be));
}
BENCHMARK(BM_Cholesky)->Args({512, 16})->Args({512, 64})->Args({512, 128})->Unit(benchmark::kMillisecond);

static void BM_TransformToStandard(benchmark::State& state) {
    const index_t n = state.range(0);
    ReferenceBackend be;
    DenseHermitian a = hermitian(n, 7);
    TriangularFactor l = cholesky_factor(definite(n, 8), 64, be);
    for (auto _ : state) benchmark::DoNotOptimize(transform_to_standard(a, l, state.range(1), be));
}
BENCHMARK(BM_TransformToStandard)->Args({512, 32})->Args({512, 64})->Unit(benchmark::kMillisecond);
