#include "loghh/global.hpp"

#include <benchmark/benchmark.h>

using namespace loghh;

namespace {

const Coefficients kQ = Coefficients::rationals();

void BM_Cohomology(benchmark::State& state, bool parallel) {
    const Fan f = Fan::named("blowup_P2");
    const auto box = lattice_box(2, static_cast<std::int64_t>(state.range(0)));
    for (auto _ : state) {
        ToricCohomology h = parallel ? cohomology(f, kQ, ToricDivisor::zero(f), 1, box, true)
                                     : cohomology_serial(f, kQ, ToricDivisor::zero(f), 1, box);
        benchmark::DoNotOptimize(h);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box.size()));
}

void BM_CechTotalize(benchmark::State& state, bool parallel) {
    const GluedLogScheme X = standard_scheme("blowup_A2", kQ);
    const auto box = lattice_box(2, static_cast<std::int64_t>(state.range(0)));
    BarOptions opt;
    opt.parallel = parallel;
    for (auto _ : state) benchmark::DoNotOptimize(cech_totalize(X, Theory::LogHH, 2, box, 0, opt));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box.size()));
}

void BM_CyclicBar(benchmark::State& state, bool parallel) {
    const MonoidHom theta(AffineMonoid::trivial(0), AffineMonoid(2, {{2, 0}, {1, 1}, {0, 2}}), IntMatrix(2, 0));
    const auto degrees = degree_box(theta.target(), static_cast<std::int64_t>(state.range(0)));
    BarOptions opt;
    opt.parallel = parallel;
    for (auto _ : state) benchmark::DoNotOptimize(cyclic_bar_homology(theta, kQ, 3, degrees, opt));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Cohomology, serial, false)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Cohomology, parallel, true)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CechTotalize, serial, false)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CechTotalize, parallel, true)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CyclicBar, serial, false)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CyclicBar, parallel, true)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
