#include <benchmark/benchmark.h>

#include "rhoplan/envs.hpp"
#include "rhoplan/harness.hpp"

using namespace rhoplan;

namespace {

void run_planner(benchmark::State& state, const char* planner_id, bool incremental) {
    const auto env = make_benchmark("lightdark2d");
    PlannerConfig cfg;
    cfg.iteration_budget = state.range(0);
    cfg.incremental_rewards = incremental;
    cfg.belief_node_init_particles = 10;
    Rng belief_rng(6);
    const WeightedParticleBelief root = env->initial_belief(belief_rng, 300);
    std::uint64_t seed = 7;
    for (auto _ : state) {
        Rng rng(seed++);
        benchmark::DoNotOptimize(
            plan_with(planner_id, *env, cfg, root, env->initial_belief_entropy(), rng).action);
    }
    state.SetComplexityN(state.range(0));
}

}  // namespace

static void BM_RhoPomcpowIncremental(benchmark::State& state) {
    run_planner(state, "rhopomcpow", true);
}
BENCHMARK(BM_RhoPomcpowIncremental)->Arg(250)->Arg(1000)->Arg(4000)->Complexity()
    ->Unit(benchmark::kMillisecond);

static void BM_RhoPomcpowFromScratch(benchmark::State& state) {
    run_planner(state, "rhopomcpow", false);
}
BENCHMARK(BM_RhoPomcpowFromScratch)->Arg(250)->Arg(1000)->Arg(4000)->Complexity()
    ->Unit(benchmark::kMillisecond);

static void BM_Pomcpow(benchmark::State& state) { run_planner(state, "pomcpow", true); }
BENCHMARK(BM_Pomcpow)->Arg(250)->Arg(1000)->Arg(4000)->Complexity()
    ->Unit(benchmark::kMillisecond);

static void BM_PftDpw(benchmark::State& state) { run_planner(state, "pft_dpw", true); }
BENCHMARK(BM_PftDpw)->Arg(250)->Arg(1000)->Complexity()->Unit(benchmark::kMillisecond);
