#include <benchmark/benchmark.h>

#include "rhoplan/belief.hpp"
#include "rhoplan/rng.hpp"

using namespace rhoplan;

static void BM_BeliefInsert(benchmark::State& state) {
    Rng rng(3);
    WeightedParticleBelief b;
    for (auto _ : state) {
        b.insert({rng.normal(), rng.normal()}, std::exp(rng.normal()), {0, 0}, 1.0);
        benchmark::DoNotOptimize(b.weight_sum());
    }
}
BENCHMARK(BM_BeliefInsert);

static void BM_BeliefSampleIndex(benchmark::State& state) {
    Rng rng(4);
    WeightedParticleBelief b;
    for (int i = 0; i < state.range(0); ++i)
        b.insert({rng.normal(), rng.normal()}, std::exp(rng.normal()), {0, 0}, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(b.sample_index(rng));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BeliefSampleIndex)->Range(256, 65536)->Complexity();
