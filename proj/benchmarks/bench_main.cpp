#include <benchmark/benchmark.h>

#include "graphcurv/checks.hpp"
#include "graphcurv/curvature.hpp"
#include "graphcurv/isoperimetry.hpp"
#include "graphcurv/metrics.hpp"
#include "graphcurv/semigroup.hpp"
#include "graphcurv/spectral.hpp"

using namespace graphcurv;

static void BM_LocalForms(benchmark::State& state) {
    const WeightedGraph g = make_hypercube(4, MeasurePolicy::normalized());
    for (auto _ : state) benchmark::DoNotOptimize(local_forms(g, 0));
}
BENCHMARK(BM_LocalForms);

static void BM_CurvatureVertex(benchmark::State& state) {
    const WeightedGraph g = make_hypercube(4, MeasurePolicy::normalized());
    for (auto _ : state) benchmark::DoNotOptimize(curvature_at(g, 0, kDimInf));
}
BENCHMARK(BM_CurvatureVertex);

static void BM_CurvatureFunction(benchmark::State& state) {
    const WeightedGraph g = make_lattice_ball(2, (int)state.range(0),
                                              MeasurePolicy::combinatorial());
    for (auto _ : state) benchmark::DoNotOptimize(curvature_function(g, kDimInf));
}
BENCHMARK(BM_CurvatureFunction)->Arg(3)->Arg(5);

static void BM_CurvatureOracle(benchmark::State& state) {
    const WeightedGraph g = make_hypercube(3, MeasurePolicy::normalized());
    for (auto _ : state)
        benchmark::DoNotOptimize(curvature_bruteforce(g, 0, kDimInf, 8, 42));
}
BENCHMARK(BM_CurvatureOracle);

static void BM_CheegerEnumeration(benchmark::State& state) {
    const WeightedGraph g = make_hypercube(4, MeasurePolicy::normalized());
    for (auto _ : state) benchmark::DoNotOptimize(cheeger_finite_exact(g));
}
BENCHMARK(BM_CheegerEnumeration);

static void BM_CheegerDinkelbach(benchmark::State& state) {
    const WeightedGraph g = make_lattice_ball(2, (int)state.range(0),
                                              MeasurePolicy::combinatorial());
    const VertexSubset omega = ball(g, graph_center(g), (int)state.range(0) - 1);
    for (auto _ : state) benchmark::DoNotOptimize(cheeger_subset(g, omega));
}
BENCHMARK(BM_CheegerDinkelbach)->Arg(4)->Arg(8);

static void BM_Lambda1Dense(benchmark::State& state) {
    const WeightedGraph g = make_lattice_ball(2, (int)state.range(0),
                                              MeasurePolicy::combinatorial());
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda1_finite(g, EigenSolverKind::dense));
}
BENCHMARK(BM_Lambda1Dense)->Arg(8)->Arg(12);

static void BM_Lambda1Lanczos(benchmark::State& state) {
    const WeightedGraph g = make_lattice_ball(2, (int)state.range(0),
                                              MeasurePolicy::combinatorial());
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda1_finite(g, EigenSolverKind::lanczos));
}
BENCHMARK(BM_Lambda1Lanczos)->Arg(12)->Arg(20);

static void BM_HeatDense(benchmark::State& state) {
    const WeightedGraph g = make_cycle((int)state.range(0), MeasurePolicy::normalized());
    VertexFunction f = VertexFunction::Zero(g.num_vertices());
    f[0] = 1.0;
    HeatOptions opts;
    opts.t = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(heat_apply(g, f, opts));
}
BENCHMARK(BM_HeatDense)->Arg(64)->Arg(256);

static void BM_HeatKrylov(benchmark::State& state) {
    const WeightedGraph g = make_cycle((int)state.range(0), MeasurePolicy::normalized());
    VertexFunction f = VertexFunction::Zero(g.num_vertices());
    f[0] = 1.0;
    HeatOptions opts;
    opts.t = 1.0;
    opts.method = HeatMethod::krylov_action;
    for (auto _ : state) benchmark::DoNotOptimize(heat_apply(g, f, opts));
}
BENCHMARK(BM_HeatKrylov)->Arg(256)->Arg(1024);

static void BM_IntrinsicMetric(benchmark::State& state) {
    const WeightedGraph g = make_lattice_ball(2, (int)state.range(0),
                                              MeasurePolicy::combinatorial());
    for (auto _ : state) benchmark::DoNotOptimize(canonical_intrinsic_metric(g));
}
BENCHMARK(BM_IntrinsicMetric)->Arg(6)->Arg(10);

static void BM_BuserFinite(benchmark::State& state) {
    const WeightedGraph g = make_hypercube(3, MeasurePolicy::normalized());
    for (auto _ : state) benchmark::DoNotOptimize(buser_check(g, VertexSubset::all(g)));
}
BENCHMARK(BM_BuserFinite);

BENCHMARK_MAIN();
