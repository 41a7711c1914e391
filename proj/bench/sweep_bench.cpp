// Benchmarks the OpenMP boundary-sweep kernel against the serial reference,
// plus the underlying exponential-integral evaluation.
#include <benchmark/benchmark.h>

#include "ksol/catalog.hpp"
#include "ksol/stability.hpp"

using namespace ksol;

namespace {

const DivisorialPolytope& t230() {
    return find_entry(load_builtin(), "3fold/2.30")->dp;
}

void bench_sweep(benchmark::State& state, Exec exec) {
    RunConfig cfg;
    cfg.exec = exec;
    const auto& dp = t230();
    const long segments = state.range(0);
    for (auto _ : state) {
        auto cand = candidate_box(dp, {0.0, 0.51489}, 1e-4, segments, cfg);
        benchmark::DoNotOptimize(cand);
    }
    state.SetItemsProcessed(state.iterations() * segments * 4);
}

void BM_sweep_serial(benchmark::State& state) { bench_sweep(state, Exec::Serial); }
void BM_sweep_openmp(benchmark::State& state) { bench_sweep(state, Exec::Parallel); }

void BM_integrate_linear_exp(benchmark::State& state) {
    const auto& dp = t230();
    const auto delta = special_fiber(dp, DegenerationPoint::at(MarkedPoint::zero()));
    delta.polytope.triangulation();
    const Precision p(53);
    std::vector<IntervalScalar> comps;
    comps.push_back(IntervalScalar::exact_zero(p));
    comps.push_back(IntervalScalar::from_rationals(Rational(51488, 100000),
                                                   Rational(51490, 100000), p));
    comps.push_back(IntervalScalar::exact_zero(p));
    IntervalVector xi(std::move(comps));
    const QVector v{Rational(0), Rational(0), Rational(1)};
    for (auto _ : state) {
        auto r = integrate_linear_exp(delta.polytope, xi, v);
        benchmark::DoNotOptimize(r);
    }
}

}  // namespace

BENCHMARK(BM_sweep_serial)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_openmp)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_integrate_linear_exp)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
