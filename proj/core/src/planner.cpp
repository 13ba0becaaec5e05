#include "rhoplan/planner.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "rhoplan/entropy.hpp"
#include "rhoplan/planner_loop.hpp"

namespace rhoplan {

void validate(const PlannerConfig& config) {
    if (config.max_depth < 1) throw std::invalid_argument("planner: max_depth must be >= 1");
    if (config.iteration_budget < 0 && config.time_budget_seconds < 0)
        throw std::invalid_argument("planner: at most one budget may be unlimited");
    auto in_unit = [](double a) { return a > 0.0 && a < 1.0; };
    if (config.strategy == SelectionKind::Dpw) {
        if (!in_unit(config.dpw.alpha_a) || !in_unit(config.dpw.alpha_o))
            throw std::invalid_argument("planner: widening exponents must lie in (0,1)");
    } else {
        if (!in_unit(config.auger.alpha_a) || !in_unit(config.auger.alpha_o))
            throw std::invalid_argument("planner: widening exponents must lie in (0,1)");
    }
    if (config.belief_node_init_particles < 1)
        throw std::invalid_argument("planner: belief_node_init_particles must be >= 1");
    if (config.pft_particle_count < 1)
        throw std::invalid_argument("planner: pft_particle_count must be >= 1");
}

double rollout_return(const ProblemModel& model, Vec2 s, int depth, Rng& rng) {
    if (depth <= 0) return 0.0;
    const double gamma = model.discount();
    double total = 0.0;
    double disc = 1.0;
    for (int remaining = depth; remaining > 0; --remaining) {
        const int a = model.rollout_action(s, remaining, depth, rng);
        const Vec2 s_next = model.transition_sample(s, a, rng);
        total += disc * model.state_reward(s, a, s_next);
        disc *= gamma;
        if (model.action_terminates(a)) break;
        s = s_next;
    }
    return total;
}

RhoPomcpowPlanner::RhoPomcpowPlanner(const ProblemModel& model, PlannerConfig config)
    : model_(model), cfg_(std::move(config)) {
    validate(cfg_);
    use_info_ = model_.shaping_weight() > 0.0;
}

ActionSelect RhoPomcpowPlanner::select_action(std::int32_t h, Rng&) {
    if (cfg_.strategy == SelectionKind::Auger)
        return auger_action_select(tree_, h, cfg_.auger, model_, tree_.node(h).depth);
    return dpw_action_select(tree_, h, cfg_.dpw, model_);
}

ObsSelect RhoPomcpowPlanner::select_observation(std::int32_t ha, Vec2 s_next, Rng& rng) {
    if (cfg_.strategy == SelectionKind::Auger)
        return auger_observation_select(tree_, ha, cfg_.auger, model_, s_next, rng);
    return dpw_observation_select(tree_, ha, cfg_.dpw, model_, s_next, rng);
}

void RhoPomcpowPlanner::insert_pair(std::int32_t hao, Vec2 posterior, Vec2 prior, int action,
                                    Rng&) {
    BeliefNode& nd = tree_.node(hao);
    const double z = model_.observation_density(nd.obs, action, posterior);
    const InsertResult res = nd.belief.insert(posterior, z, prior, 1.0);
    if (cfg_.incremental_rewards) {
        const Particle& p = nd.belief.particle(static_cast<std::size_t>(res.index));
        nd.state_reward_num +=
            res.weight_delta * model_.state_reward(p.prior_state, action, p.state);
        if (use_info_)
            boers_update(*nd.belief.entropy().boers, nd.belief, res, action, nd.obs, model_);
    }
}

double RhoPomcpowPlanner::update_reward(std::int32_t hao, int action) {
    BeliefNode& nd = tree_.node(hao);
    double state_term;
    if (cfg_.incremental_rewards)
        state_term = nd.state_reward_num / nd.belief.weight_sum();
    else
        state_term = nd.belief.expected_state_reward(model_, action);

    double info_term = 0.0;
    if (use_info_) {
        const double h_node = cfg_.incremental_rewards
                                  ? nd.belief.entropy().boers->value
                                  : boers_batch(nd.belief, action, nd.obs, model_);
        nd.entropy = h_node;
        const double h_parent = tree_.node(tree_.action(nd.parent_action).parent).entropy;
        info_term = model_.shaping_weight() * info_gain(h_parent, h_node);
    }
    stats_.reward_evaluations += 1;
    nd.rho = ShapedReward::make(state_term, info_term).total;
    return nd.rho;
}

double RhoPomcpowPlanner::simulate_v(std::int32_t h, Vec2 s, int depth, Rng& rng) {
    if (depth == 0) return 0.0;
    const ActionSelect sel = select_action(h, rng);
    const double q_prev = tree_.action(sel.action_node).q;
    const double q_new = simulate_q(sel.action_node, s, depth, rng);
    BeliefNode& node = tree_.node(h);
    node.visits += 1;
    const double v = lvu_update_v(node, tree_.action(sel.action_node), q_new, q_prev);
    if (cfg_.check_invariants) {
        const double oracle = full_recompute_v(tree_, h);
        if (std::abs(v - oracle) > 1e-9)
            throw std::logic_error("rho-pomcpow: incremental V diverged from recomputation");
    }
    return v;
}

double RhoPomcpowPlanner::simulate_q(std::int32_t ha, Vec2 s, int depth, Rng& rng) {
    const int action = tree_.action(ha).action;
    const Vec2 s_next = model_.transition_sample(s, action, rng);
    const bool terminal = model_.action_terminates(action);

    const ObsSelect os = select_observation(ha, s_next, rng);
    std::int32_t hao;
    std::size_t branch_idx;
    double rho_prev, v_prev, v_used;

    if (os.is_new) {
        hao = tree_.add_belief_child(ha, os.obs, terminal);
        branch_idx = tree_.action(ha).branches.size() - 1;
        iter_depth_reached_ = std::max(iter_depth_reached_, tree_.node(hao).depth);
        if (use_info_ && cfg_.incremental_rewards) {
            auto cache = std::make_unique<BoersCache>();
            boers_init(*cache, action, os.obs);
            tree_.node(hao).belief.entropy().boers = std::move(cache);
        }
        rho_prev = 0.0;
        v_prev = 0.0;
        insert_pair(hao, s_next, s, action, rng);
        // Seed the fresh belief from the parent's belief so the prior side is
        // diverse from the start; a point-mass prior side would report the
        // bare transition entropy and inflate the information gain.
        const std::int32_t parent = tree_.action(ha).parent;
        for (int k = 1; k < cfg_.belief_node_init_particles; ++k) {
            const WeightedParticleBelief& pb = tree_.node(parent).belief;
            const Vec2 prior =
                pb.particle(static_cast<std::size_t>(pb.sample_index(rng))).state;
            insert_pair(hao, model_.transition_sample(prior, action, rng), prior, action, rng);
        }
        update_reward(hao, action);
        const double roll =
            terminal ? 0.0 : rollout_return(model_, s_next, depth - 1, rng);
        BeliefNode& nd = tree_.node(hao);
        nd.rollout_value = roll;
        nd.value = roll;
        v_used = roll;
    } else {
        branch_idx = static_cast<std::size_t>(os.branch);
        hao = tree_.action(ha).branches[branch_idx].node;
        {
            const BeliefNode& nd = tree_.node(hao);
            rho_prev = nd.rho;
            v_prev = nd.value;
        }
        insert_pair(hao, s_next, s, action, rng);
        update_reward(hao, action);
        if (terminal) {
            v_used = 0.0;
        } else {
            const WeightedParticleBelief& b = tree_.node(hao).belief;
            const Vec2 resampled = b.particle(static_cast<std::size_t>(b.sample_index(rng))).state;
            v_used = simulate_v(hao, resampled, depth - 1, rng);
        }
    }

    {
        BeliefNode& nd = tree_.node(hao);
        nd.rho_prev = rho_prev;
        nd.value_prev = v_prev;
    }
    ActionNode& a = tree_.action(ha);
    a.visits += 1;
    a.branches[branch_idx].visits += 1;
    const double rho_new = tree_.node(hao).rho;
    const double q =
        lvu_update_q(a, a.branches[branch_idx], rho_new, rho_prev, v_used, v_prev,
                     model_.discount());
    if (cfg_.check_invariants) {
        const double oracle = full_recompute_q(tree_, ha, model_.discount());
        if (std::abs(q - oracle) > 1e-9)
            throw std::logic_error("rho-pomcpow: incremental Q diverged from recomputation");
    }
    return q;
}

PlanResult RhoPomcpowPlanner::plan(const WeightedParticleBelief& root_belief,
                                   double root_entropy, Rng& rng) {
    if (root_belief.empty()) throw std::invalid_argument("plan: root belief is empty");
    tree_ = BeliefTree{};
    stats_ = PlanStats{};
    const std::int32_t root = tree_.make_root(root_belief, root_entropy);

    return detail::run_plan_loop(model_, cfg_, tree_, stats_, rng, [&](Rng& r) {
        iter_depth_reached_ = 0;
        const WeightedParticleBelief& rb = tree_.node(root).belief;
        const Vec2 s = rb.particle(static_cast<std::size_t>(rb.sample_index(r))).state;
        simulate_v(root, s, cfg_.max_depth, r);
        stats_.max_depth_reached = std::max(stats_.max_depth_reached, iter_depth_reached_);
    });
}

}  // namespace rhoplan
