#include "rhoplan/pomcpow.hpp"

#include "rhoplan/entropy.hpp"
#include "rhoplan/planner_loop.hpp"

namespace rhoplan {

PomcpowPlanner::PomcpowPlanner(const ProblemModel& model, PlannerConfig config)
    : model_(model), cfg_(std::move(config)) {
    validate(cfg_);
}

void PomcpowPlanner::insert_pair(std::int32_t hao, Vec2 posterior, Vec2 prior, int action) {
    BeliefNode& nd = tree_.node(hao);
    const double z = model_.observation_density(nd.obs, action, posterior);
    const InsertResult res = nd.belief.insert(posterior, z, prior, 1.0);
    if (cfg_.piggyback_info) {
        boers_update(*nd.belief.entropy().boers, nd.belief, res, action, nd.obs, model_);
        stats_.reward_evaluations += 1;
    }
}

double PomcpowPlanner::simulate(std::int32_t h, Vec2 s, int depth, Rng& rng) {
    if (depth == 0) return 0.0;
    const ActionSelect sel = dpw_action_select(tree_, h, cfg_.dpw, model_);
    const std::int32_t ha = sel.action_node;
    const int action = tree_.action(ha).action;

    const Vec2 s_next = model_.transition_sample(s, action, rng);
    const double r = model_.state_reward(s, action, s_next);
    const bool terminal = model_.action_terminates(action);

    const ObsSelect os = dpw_observation_select(tree_, ha, cfg_.dpw, model_, s_next, rng);
    std::int32_t hao;
    std::size_t branch_idx;
    double total;

    if (os.is_new) {
        hao = tree_.add_belief_child(ha, os.obs, terminal);
        branch_idx = tree_.action(ha).branches.size() - 1;
        stats_.max_depth_reached = std::max(stats_.max_depth_reached, tree_.node(hao).depth);
        if (cfg_.piggyback_info) {
            auto cache = std::make_unique<BoersCache>();
            boers_init(*cache, action, os.obs);
            tree_.node(hao).belief.entropy().boers = std::move(cache);
        }
        insert_pair(hao, s_next, s, action);
        total = r;
        if (!terminal)
            total += model_.discount() * rollout_return(model_, s_next, depth - 1, rng);
    } else {
        branch_idx = static_cast<std::size_t>(os.branch);
        hao = tree_.action(ha).branches[branch_idx].node;
        insert_pair(hao, s_next, s, action);
        total = r;
        if (!terminal) {
            const WeightedParticleBelief& b = tree_.node(hao).belief;
            const Vec2 resampled = b.particle(static_cast<std::size_t>(b.sample_index(rng))).state;
            total += model_.discount() * simulate(hao, resampled, depth - 1, rng);
        }
    }

    tree_.node(h).visits += 1;
    ActionNode& a = tree_.action(ha);
    a.visits += 1;
    a.branches[branch_idx].visits += 1;
    a.q += (total - a.q) / static_cast<double>(a.visits);
    return total;
}

PlanResult PomcpowPlanner::plan(const WeightedParticleBelief& root_belief, double /*root_entropy*/,
                                Rng& rng) {
    if (root_belief.empty()) throw std::invalid_argument("plan: root belief is empty");
    tree_ = BeliefTree{};
    stats_ = PlanStats{};
    const std::int32_t root = tree_.make_root(root_belief, 0.0);

    return detail::run_plan_loop(model_, cfg_, tree_, stats_, rng, [&](Rng& r) {
        const WeightedParticleBelief& rb = tree_.node(root).belief;
        const Vec2 s = rb.particle(static_cast<std::size_t>(rb.sample_index(r))).state;
        simulate(root, s, cfg_.max_depth, r);
    });
}

}  // namespace rhoplan
