#include <benchmark/benchmark.h>

#include "rhoplan/entropy.hpp"
#include "rhoplan/envs.hpp"

using namespace rhoplan;

namespace {

struct BoersFixture {
    LightDark2D env{LightDark2D::default_map()};
    WeightedParticleBelief belief;
    BoersCache cache;
    Rng rng{1};
    int action = 0;
    Vec2 obs{1.0, 1.1};

    explicit BoersFixture(int n) {
        boers_init(cache, action, obs);
        for (int i = 0; i < n; ++i) push();
    }

    void push() {
        const Vec2 prior = gaussian_sample(env.map().x0, BeaconWorld::initial_cov(), rng);
        const Vec2 post = env.transition_sample(prior, action, rng);
        const InsertResult r =
            belief.insert(post, env.observation_density(obs, action, post), prior, 1.0);
        boers_update(cache, belief, r, action, obs, env);
    }
};

}  // namespace

static void BM_ShannonUpdate(benchmark::State& state) {
    EntropyCache cache;
    shannon_update(cache, 0.0, 1.0, 0.0, 1.0);
    double wsum = 1.0;
    for (auto _ : state) {
        shannon_update(cache, wsum, wsum + 0.5, 0.0, 0.5);
        wsum += 0.5;
        benchmark::DoNotOptimize(cache.shannon_value);
    }
}
BENCHMARK(BM_ShannonUpdate);

static void BM_ShannonBatch(benchmark::State& state) {
    WeightedParticleBelief b;
    Rng rng(2);
    for (int i = 0; i < state.range(0); ++i)
        b.insert({rng.normal(), rng.normal()}, std::exp(rng.normal()), {0, 0}, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(shannon_batch(b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ShannonBatch)->Range(256, 8192)->Complexity();

static void BM_BoersUpdate(benchmark::State& state) {
    BoersFixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        f.push();
        benchmark::DoNotOptimize(f.cache.value);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BoersUpdate)->Range(256, 4096)->Complexity();

static void BM_BoersBatch(benchmark::State& state) {
    BoersFixture f(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(boers_batch(f.belief, f.action, f.obs, f.env));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BoersBatch)->Range(256, 2048)->Complexity();
