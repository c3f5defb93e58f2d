// Serial vs OpenMP timings for the parallel kernels.
#include <benchmark/benchmark.h>

#include "sbc/singular.hpp"
#include "sbc/testfns.hpp"
#include "sbc/tmvi.hpp"

using namespace sbc;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "parallel" : "serial"); }

void BM_GenerateRule(benchmark::State& state) {
    const Region r = lookup_geometry("deltoid").make();
    const int n = static_cast<int>(state.range(1));
    for (auto _ : state) {
        CubatureRule rule = generate_rule(r, center::VertexAverage{}, n, n, RuleOptions{false, mode(state)});
        benchmark::DoNotOptimize(rule.weights.data());
    }
    label(state);
}

void BM_ApplyRule(benchmark::State& state) {
    const Region r = lookup_geometry("bezier").make();
    const int n = static_cast<int>(state.range(1));
    const CubatureRule rule = generate_rule(r, center::VertexAverage{}, n, n);
    const ScalarField f = lookup_function("fC4").field;
    for (auto _ : state) benchmark::DoNotOptimize(apply_rule(rule, f, mode(state)));
    label(state);
}

void BM_XfemSingular(benchmark::State& state) {
    const XfemProblem p = xfem_integrands(XfemElement::Omega2, 1e-2);
    const SingularSpec spec{p.tip, 0.5, radial::GaussJacobi{}, TTransform::R1};
    const int n = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            integrate_singular(p.region, {p.numerators[5], 0.5}, spec, n, n, nullptr, mode(state)));
    label(state);
}

void BM_TmviL2(benchmark::State& state) {
    const BoundaryLoop egg = egg_domain();
    const ScalarField g2 = lookup_function("g2").field;
    const ScalarField u = [&](Point2 x) { return tmvi_eval(egg, g2, x); };
    const int n = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(relative_l2_error(egg, u, g2, n, 2 * n, mode(state)));
    label(state);
}

}  // namespace

BENCHMARK(BM_GenerateRule)->ArgsProduct({{0, 1}, {64, 256}})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_ApplyRule)->ArgsProduct({{0, 1}, {64, 256}})->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_XfemSingular)->ArgsProduct({{0, 1}, {16, 64}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TmviL2)->ArgsProduct({{0, 1}, {10}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
