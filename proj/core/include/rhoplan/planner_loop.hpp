#pragma once

#include <chrono>
#include <functional>

#include "rhoplan/planner.hpp"

namespace rhoplan::detail {

// Budget loop shared by the planners: runs `one_iteration` until the
// iteration budget is exhausted or (checked every clock_check_interval
// iterations) the time budget is, then returns the argmax root action with
// ties broken toward the lowest child index.
template <typename Step>
PlanResult run_plan_loop(const ProblemModel& model, const PlannerConfig& cfg, BeliefTree& tree,
                         PlanStats& stats, Rng& rng, Step one_iteration) {
    using clock = std::chrono::steady_clock;
    PlanResult result;

    if (cfg.iteration_budget == 0 || cfg.time_budget_seconds == 0.0) {
        result.zero_budget_warning = true;
        result.action = rng.uniform_int(model.action_count());
        return result;
    }

    const auto start = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

    std::int64_t t = 0;
    while (true) {
        if (cfg.iteration_budget >= 0 && t >= cfg.iteration_budget) break;
        if (cfg.time_budget_seconds > 0.0 &&
            t % static_cast<std::int64_t>(cfg.clock_check_interval) == 0 &&
            elapsed() >= cfg.time_budget_seconds)
            break;
        one_iteration(rng);
        ++t;
        if (cfg.collect_timing) stats.cumulative_seconds.push_back(elapsed());
        if (cfg.iteration_hook) cfg.iteration_hook(t, tree);
        if (cfg.trace) {
            *cfg.trace << "{\"iter\":" << t << ",\"depth_reached\":" << stats.max_depth_reached
                       << ",\"root\":[";
            const BeliefNode& root = tree.node(tree.root());
            for (std::size_t i = 0; i < root.children.size(); ++i) {
                const ActionNode& a = tree.action(root.children[i]);
                *cfg.trace << (i ? "," : "") << "{\"a\":" << a.action << ",\"n\":" << a.visits
                           << ",\"q\":" << a.q << "}";
            }
            *cfg.trace << "]}\n";
        }
    }

    const BeliefNode& root = tree.node(tree.root());
    double best_q = 0.0;
    for (std::int32_t ha : root.children) {
        const ActionNode& a = tree.action(ha);
        if (result.action < 0 || a.q > best_q) {
            best_q = a.q;
            result.action = a.action;
        }
    }
    if (result.action < 0) {
        result.zero_budget_warning = true;
        result.action = rng.uniform_int(model.action_count());
    }

    stats.iterations = t;
    stats.belief_nodes = tree.node_count();
    stats.action_nodes = tree.action_count();
    stats.tree_digest = tree.digest();
    result.stats = stats;
    if (cfg.keep_tree) result.tree = std::make_unique<BeliefTree>(std::move(tree));
    return result;
}

}  // namespace rhoplan::detail
