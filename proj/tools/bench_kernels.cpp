// bench_kernels — OpenMP kernels vs the serial reference implementations,
// plus the eigensolver at the dimensions the library typically runs.

#include <benchmark/benchmark.h>

#include "mcpt/linalg.hpp"
#include "mcpt/random.hpp"

namespace {

using namespace mcpt;

CMat make_matrix(std::size_t n) {
    auto gen = rng::make(17);
    return rng::random_hermitian(n, gen);
}

CVec make_vector(std::size_t n) {
    auto gen = rng::make(19);
    return rng::random_vec(n, gen);
}

void BM_matvec_serial(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const CMat a = make_matrix(n);
    const CVec x = make_vector(n);
    for (auto _ : state) benchmark::DoNotOptimize(ref::matvec(a, x));
}

void BM_matvec_omp(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const CMat a = make_matrix(n);
    const CVec x = make_vector(n);
    for (auto _ : state) benchmark::DoNotOptimize(matvec(a, x));
}

void BM_matmul_serial(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const CMat a = make_matrix(n);
    const CMat b = make_matrix(n);
    for (auto _ : state) benchmark::DoNotOptimize(ref::matmul(a, b));
}

void BM_matmul_omp(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const CMat a = make_matrix(n);
    const CMat b = make_matrix(n);
    for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
}

void BM_eigh(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const CMat a = make_matrix(n);
    for (auto _ : state) benchmark::DoNotOptimize(eigh(a));
}

}  // namespace

BENCHMARK(BM_matvec_serial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_matvec_omp)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_matmul_serial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_matmul_omp)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_eigh)->Arg(64)->Arg(200);

BENCHMARK_MAIN();
