#include <benchmark/benchmark.h>

#include "rhoplan/rng.hpp"
#include "rhoplan/tree.hpp"

using namespace rhoplan;

namespace {

// Root with `width` action children, each holding one branch.
BeliefTree wide_tree(int width) {
    BeliefTree tree;
    const std::int32_t root = tree.make_root(WeightedParticleBelief{}, 0.0);
    for (int k = 0; k < width; ++k) {
        const std::int32_t ha = tree.add_action_child(root, k);
        tree.add_belief_child(ha, {0.0, 0.0}, false);
        tree.action(ha).visits = 3;
        tree.action(ha).branches[0].visits = 3;
        tree.action(ha).q = 0.1 * k;
    }
    tree.node(root).visits = 1 + 3 * width;
    return tree;
}

}  // namespace

static void BM_LvuUpdateV(benchmark::State& state) {
    BeliefTree tree = wide_tree(static_cast<int>(state.range(0)));
    Rng rng(5);
    BeliefNode& root = tree.node(0);
    for (auto _ : state) {
        const std::int32_t ha = root.children[rng.uniform_int(
            static_cast<int>(root.children.size()))];
        benchmark::DoNotOptimize(
            lvu_update_v(root, tree.action(ha), rng.uniform(-1, 1), rng.uniform(-1, 1)));
    }
}
BENCHMARK(BM_LvuUpdateV)->Range(8, 512);

static void BM_FullRecomputeV(benchmark::State& state) {
    const BeliefTree tree = wide_tree(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(full_recompute_v(tree, 0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FullRecomputeV)->Range(8, 512)->Complexity();
