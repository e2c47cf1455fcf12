#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>

#include "pmgraph/calculus.hpp"
#include "pmgraph/generators.hpp"
#include "pmgraph/kernel.hpp"
#include "pmgraph/pme.hpp"
#include "pmgraph/rng.hpp"

using namespace pmg;

namespace {

WeightedGraph bench_graph(int n, ThetaMode theta) {
    GeneratorOptions opt;
    opt.theta = theta;
    opt.weights = WeightMode::random;
    opt.seed = 42;
    // Stay above the connectivity threshold so retries are rare.
    const double p = std::min(1.0, std::max(4.0, 2.0 * std::log(n)) / n);
    return make_gnp(n, p, opt);
}

VertexField bench_field(int n) {
    Rng rng(7);
    VertexField u(static_cast<std::size_t>(n));
    for (auto& v : u) v = rng.uniform(0.1, 10.0);
    return u;
}

}  // namespace

static void BM_Laplacian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const WeightedGraph g = bench_graph(n, ThetaMode::one);
    const VertexField u = bench_field(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(laplacian(g, u));
    }
}
BENCHMARK(BM_Laplacian)->Arg(32)->Arg(128)->Arg(512);

static void BM_PowerIdentityResidual(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const WeightedGraph g = bench_graph(n, ThetaMode::one);
    const VertexField u = bench_field(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(power_identity_residual(g, u, 2.0));
    }
}
BENCHMARK(BM_PowerIdentityResidual)->Arg(32)->Arg(256);

static void BM_HeatKernelSeries(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const WeightedGraph g = bench_graph(n, ThetaMode::degree);
    const double t = static_cast<double>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(heat_kernel_series(g, t, 1e-10));
    }
}
BENCHMARK(BM_HeatKernelSeries)->Args({16, 1})->Args({32, 1})->Args({32, 5})->Args({64, 1});

static void BM_HeatKernelOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const WeightedGraph g = bench_graph(n, ThetaMode::degree);
    for (auto _ : state) {
        benchmark::DoNotOptimize(heat_kernel_oracle(g, 1.0));
    }
}
BENCHMARK(BM_HeatKernelOracle)->Arg(16)->Arg(32)->Arg(64);

static void BM_ShortestPathEnumeration(benchmark::State& state) {
    // Cycles double the path count between antipodes; gnp adds bulk.
    const int n = static_cast<int>(state.range(0));
    const WeightedGraph g = bench_graph(n, ThetaMode::one);
    for (auto _ : state) {
        benchmark::DoNotOptimize(shortest_paths(g, 0, n / 2, 10000));
    }
}
BENCHMARK(BM_ShortestPathEnumeration)->Arg(32)->Arg(128);

static void BM_IntegrateAdaptive(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const WeightedGraph g = bench_graph(n, ThetaMode::one);
    PMEProblem p;
    p.graph = &g;
    p.m = 2.0;
    p.delta.assign(static_cast<std::size_t>(n), -1.0);
    p.psi.assign(static_cast<std::size_t>(n), Poly::constant(1.0));
    p.u0.assign(static_cast<std::size_t>(n), 1.0);
    p.t_begin = 0.0;
    p.t_end = 0.4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(p));
    }
}
BENCHMARK(BM_IntegrateAdaptive)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
