#include <benchmark/benchmark.h>

#include <geaoi/geaoi.hpp>

namespace {

const geaoi::GEServiceScenario kService(1.0, 0.1, 1.0);
const geaoi::GEArrivalScenario kArrival(1.0, 0.1, 1.0);

void BM_AgeGEService(benchmark::State &state) {
    const geaoi::TransitionMatrix P(0.3, 0.6);
    for (auto _ : state)
        benchmark::DoNotOptimize(geaoi::age_ge_service(kService, P));
}
BENCHMARK(BM_AgeGEService);

void BM_VerifyMonotonicity(benchmark::State &state) {
    const geaoi::Scenario s = kService;
    for (auto _ : state)
        benchmark::DoNotOptimize(geaoi::verify_monotonicity(s, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_VerifyMonotonicity)->Arg(9)->Arg(99);

void run_simulation(benchmark::State &state, const geaoi::Scenario &s, bool trapezoid) {
    geaoi::SimConfig cfg{.scenario = s, .P = geaoi::TransitionMatrix(0.5, 0.5)};
    cfg.num_cycles = static_cast<std::uint64_t>(state.range(0));
    cfg.replications = 1;
    for (auto _ : state) {
        if (trapezoid)
            benchmark::DoNotOptimize(geaoi::simulate_area_paper_partition(cfg));
        else
            benchmark::DoNotOptimize(geaoi::simulate_cycles(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
void BM_SimulateSawtooth(benchmark::State &state, const geaoi::Scenario &s) {
    run_simulation(state, s, false);
}
void BM_SimulateTrapezoid(benchmark::State &state, const geaoi::Scenario &s) {
    run_simulation(state, s, true);
}

BENCHMARK_CAPTURE(BM_SimulateSawtooth, service, geaoi::Scenario{kService})
    ->Arg(100'000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SimulateTrapezoid, service, geaoi::Scenario{kService})
    ->Arg(100'000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SimulateSawtooth, arrival, geaoi::Scenario{kArrival})
    ->Arg(100'000)
    ->Unit(benchmark::kMillisecond);

} // namespace
