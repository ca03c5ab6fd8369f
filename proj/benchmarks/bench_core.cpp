// bench_core.cpp -- micro benchmarks for the numerical kernels on the sizes
// the experiments actually use.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "risklab/market.hpp"
#include "risklab/matrix_kernel.hpp"
#include "risklab/risk_engine.hpp"

namespace {

risklab::ReturnMatrix make_matrix(std::size_t n_assets) {
    risklab::EnsembleSpec spec;
    spec.n_assets = n_assets;
    spec.scenario_ratio = 2.0;
    spec.master_seed = 42;
    spec.n_samples = 1;
    return risklab::sample_return_matrix(spec, 0);
}

void bm_sample_return_matrix(benchmark::State& state) {
    risklab::EnsembleSpec spec;
    spec.n_assets = static_cast<std::size_t>(state.range(0));
    spec.scenario_ratio = 2.0;
    spec.master_seed = 42;
    spec.n_samples = 1;
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(risklab::sample_return_matrix(spec, i++));
}
BENCHMARK(bm_sample_return_matrix)->Arg(100)->Arg(200)->Arg(400);

void bm_covariance(benchmark::State& state) {
    const risklab::ReturnMatrix x =
        make_matrix(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(risklab::covariance(x));
}
BENCHMARK(bm_covariance)->Arg(100)->Arg(200)->Arg(400);

void bm_factorize_solve(benchmark::State& state) {
    const risklab::SymMatrix j =
        risklab::covariance(make_matrix(static_cast<std::size_t>(state.range(0))));
    const std::vector<double> e(j.order(), 1.0);
    for (auto _ : state) {
        const risklab::SpdFactorization f = risklab::factorize_spd(j);
        benchmark::DoNotOptimize(risklab::solve(f, e));
    }
}
BENCHMARK(bm_factorize_solve)->Arg(100)->Arg(200)->Arg(400);

void bm_eigenvalues(benchmark::State& state) {
    const risklab::SymMatrix j =
        risklab::covariance(make_matrix(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(risklab::eigenvalues_sym(j));
}
BENCHMARK(bm_eigenvalues)->Arg(100)->Arg(200)->Arg(400);

void bm_minimal_risk(benchmark::State& state) {
    const risklab::ReturnMatrix x =
        make_matrix(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(risklab::minimal_risk(x));
}
BENCHMARK(bm_minimal_risk)->Arg(100)->Arg(200)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
