#include "rhoplan/pft_dpw.hpp"

#include <cmath>

#include "rhoplan/entropy.hpp"
#include "rhoplan/planner_loop.hpp"

namespace rhoplan {

PftDpwPlanner::PftDpwPlanner(const ProblemModel& model, PlannerConfig config)
    : model_(model), cfg_(std::move(config)) {
    validate(cfg_);
    use_info_ = model_.shaping_weight() > 0.0;
}

std::int32_t PftDpwPlanner::expand_belief_child(std::int32_t ha, int action, std::int32_t parent,
                                                Rng& rng) {
    // Generative draw fixes the observation; the whole belief is then pushed
    // through (action, observation).
    Vec2 obs;
    {
        const WeightedParticleBelief& b = tree_.node(parent).belief;
        const Vec2 s = b.particle(static_cast<std::size_t>(b.sample_index(rng))).state;
        const Vec2 s_next = model_.transition_sample(s, action, rng);
        obs = model_.observation_sample(action, s_next, rng);
    }
    const bool terminal = model_.action_terminates(action);
    const std::int32_t hao = tree_.add_belief_child(ha, obs, terminal);
    stats_.max_depth_reached = std::max(stats_.max_depth_reached, tree_.node(hao).depth);

    for (int j = 0; j < cfg_.pft_particle_count; ++j) {
        const WeightedParticleBelief& pb = tree_.node(parent).belief;
        const Vec2 sj = pb.particle(static_cast<std::size_t>(pb.sample_index(rng))).state;
        const Vec2 sj_next = model_.transition_sample(sj, action, rng);
        const double z = model_.observation_density(obs, action, sj_next);
        tree_.node(hao).belief.insert(sj_next, z, sj, 1.0);
    }

    // Reward once, at creation.
    BeliefNode& nd = tree_.node(hao);
    const double state_term = nd.belief.expected_state_reward(model_, action);
    double info_term = 0.0;
    if (use_info_) {
        nd.entropy = boers_batch(nd.belief, action, obs, model_);
        info_term =
            model_.shaping_weight() * info_gain(tree_.node(parent).entropy, nd.entropy);
    }
    stats_.reward_evaluations += 1;
    nd.rho = ShapedReward::make(state_term, info_term).total;
    return hao;
}

double PftDpwPlanner::simulate(std::int32_t b, int depth, Rng& rng) {
    if (depth == 0) return 0.0;
    const ActionSelect sel = dpw_action_select(tree_, b, cfg_.dpw, model_);
    const std::int32_t ha = sel.action_node;
    const int action = tree_.action(ha).action;

    const double cap =
        cfg_.dpw.k_o * std::pow(static_cast<double>(tree_.action(ha).visits), cfg_.dpw.alpha_o);
    std::size_t branch_idx;
    std::int32_t hao;
    double total;

    if (static_cast<double>(tree_.action(ha).branches.size()) <= cap) {
        hao = expand_belief_child(ha, action, b, rng);
        branch_idx = tree_.action(ha).branches.size() - 1;
        const BeliefNode& nd = tree_.node(hao);
        total = nd.rho;
        if (!nd.terminal && depth - 1 > 0) {
            const Vec2 s =
                nd.belief.particle(static_cast<std::size_t>(nd.belief.sample_index(rng))).state;
            total += model_.discount() * rollout_return(model_, s, depth - 1, rng);
        }
    } else {
        branch_idx = static_cast<std::size_t>(rng.uniform_int(
            static_cast<int>(tree_.action(ha).branches.size())));
        hao = tree_.action(ha).branches[branch_idx].node;
        const BeliefNode& nd = tree_.node(hao);
        total = nd.rho;
        if (!nd.terminal) total += model_.discount() * simulate(hao, depth - 1, rng);
    }

    tree_.node(b).visits += 1;
    ActionNode& a = tree_.action(ha);
    a.visits += 1;
    a.branches[branch_idx].visits += 1;
    a.q += (total - a.q) / static_cast<double>(a.visits);
    return total;
}

PlanResult PftDpwPlanner::plan(const WeightedParticleBelief& root_belief, double root_entropy,
                               Rng& rng) {
    if (root_belief.empty()) throw std::invalid_argument("plan: root belief is empty");
    tree_ = BeliefTree{};
    stats_ = PlanStats{};

    // Fixed-size root belief: m equally weighted resamples.
    WeightedParticleBelief root;
    for (int j = 0; j < cfg_.pft_particle_count; ++j) {
        const Vec2 s =
            root_belief.particle(static_cast<std::size_t>(root_belief.sample_index(rng))).state;
        root.insert(s, 1.0, s, 1.0);
    }
    const std::int32_t root_id = tree_.make_root(std::move(root), root_entropy);

    return detail::run_plan_loop(model_, cfg_, tree_, stats_, rng, [&](Rng& r) {
        simulate(root_id, cfg_.max_depth, r);
    });
}

}  // namespace rhoplan
