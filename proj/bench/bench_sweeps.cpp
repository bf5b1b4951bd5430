// Serial reference loops against the OpenMP kernels. Arg 0 is serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "pcsamp/estimator.hpp"
#include "pcsamp/oracle.hpp"
#include "pcsamp/sweep.hpp"

using namespace pcsamp;

namespace {

Execution exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

const std::vector<SignalSpec>& specs() {
    static const auto all = generate_specs(SpecGenerator{}, 20, 7);
    return all;
}

void BM_PropositionSweep(benchmark::State& state) {
    const auto exec = exec_of(state);
    for (auto _ : state)
        for (const auto& spec : specs()) benchmark::DoNotOptimize(proposition_sweep(spec, 1000, exec));
}

void BM_WorstCaseFull(benchmark::State& state) {
    const auto exec = exec_of(state);
    for (auto _ : state) {
        for (const auto& spec : specs()) {
            const Levels lv(spec);
            const ObservationSet obs(enumerate_atlas(spec).patterns(), lv);
            for (int l = 0; l <= spec.m(); ++l) {
                const auto model = infer_model(obs, l);
                benchmark::DoNotOptimize(
                    worst_case_energy(estimate_full(model, lv), lv, independent_box(model), 10, exec));
            }
        }
    }
}

// Chain instance: one coupled group searched jointly on a fine grid.
void BM_WorstCaseChain(benchmark::State& state) {
    const auto exec = exec_of(state);
    SignalSpec spec;
    spec.regions = {{4, 3, Rational(1, 4)}, {2, 2, Rational(1, 2)}};
    const Levels lv(spec);
    const ObservationSet obs({SamplingPattern{{3, 1}}}, lv);
    const auto model = infer_model(obs, 0);
    const auto est = estimate_partial(model, lv);
    const auto box = feasible_box(model, obs);
    for (auto _ : state) benchmark::DoNotOptimize(worst_case_energy(est, lv, box, state.range(1), exec));
}

void BM_ConsistencySweep(benchmark::State& state) {
    const auto exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(exhaustive_consistency_sweep(SpecGenerator{}, 10, 5, 200, exec));
}

}  // namespace

BENCHMARK(BM_PropositionSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WorstCaseFull)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WorstCaseChain)->Args({0, 50})->Args({1, 50})->Args({0, 200})->Args({1, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConsistencySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
