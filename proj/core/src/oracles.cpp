#include <chrono>
#include <cmath>

#include "rhoplan/entropy.hpp"
#include "rhoplan/harness.hpp"

namespace rhoplan {

namespace {

using clock_t_ = std::chrono::steady_clock;

double seconds_since(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

}  // namespace

SweepResult shannon_sweep(int n_insertions, std::uint64_t seed) {
    // Precompute the operation sequence: weight, and for ~1/7 of the steps a
    // merge into an existing slot.
    struct Op {
        std::size_t index;
        bool merge;
        double weight;
    };
    Rng rng(seed);
    std::vector<Op> ops;
    ops.reserve(static_cast<std::size_t>(n_insertions));
    std::size_t live = 0;
    for (int i = 0; i < n_insertions; ++i) {
        const bool merge = live > 0 && rng.uniform_int(7) == 0;
        const double w = std::exp(rng.normal());
        if (merge)
            ops.push_back({static_cast<std::size_t>(rng.uniform_int(static_cast<int>(live))),
                           true, w});
        else
            ops.push_back({live++, false, w});
    }

    SweepResult res;
    res.steps = n_insertions;
    std::vector<double> h_inc(ops.size());
    std::vector<double> weights;
    weights.reserve(live);

    // Incremental path: O(1) cache updates.
    {
        EntropyCache cache;
        double wsum = 0.0;
        weights.clear();
        const auto t0 = clock_t_::now();
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const Op& op = ops[i];
            double w_old;
            if (op.merge) {
                w_old = weights[op.index];
                weights[op.index] += op.weight;
            } else {
                w_old = 0.0;
                weights.push_back(op.weight);
            }
            const double w_new = op.merge ? weights[op.index] : op.weight;
            const double new_sum = wsum + op.weight;
            if (i == 0) {
                cache.shannon_wlogw_sum = w_new * std::log(w_new);
                cache.shannon_value = 0.0;
            } else {
                shannon_update(cache, wsum, new_sum, w_old, w_new);
            }
            wsum = new_sum;
            h_inc[i] = cache.shannon_value;
        }
        res.incremental_seconds = seconds_since(t0);
    }

    // Batch path: full recomputation after every insertion.
    {
        std::vector<double> h_batch(ops.size());
        weights.clear();
        double wsum = 0.0;
        const auto t0 = clock_t_::now();
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const Op& op = ops[i];
            if (op.merge)
                weights[op.index] += op.weight;
            else
                weights.push_back(op.weight);
            wsum += op.weight;
            double h = 0.0;
            for (const double w : weights) {
                const double u = w / wsum;
                h -= u * std::log(u);
            }
            h_batch[i] = h;
        }
        res.batch_seconds = seconds_since(t0);
        for (std::size_t i = 0; i < ops.size(); ++i)
            res.max_err = std::max(res.max_err, std::abs(h_inc[i] - h_batch[i]));
    }
    return res;
}

SweepResult boers_sweep(const BeaconWorld& env, int n_insertions, int check_every,
                        std::uint64_t seed) {
    Rng rng(seed);
    const int action = 0;
    const Vec2 obs = {1.0, 1.1};

    WeightedParticleBelief belief;
    BoersCache cache;
    boers_init(cache, action, obs);

    SweepResult res;
    res.steps = n_insertions;
    const DiagCov2 spread = BeaconWorld::initial_cov();

    for (int i = 0; i < n_insertions; ++i) {
        Vec2 prior, posterior;
        if (belief.count() > 2 && i % 50 == 17) {
            // Re-insert the stored pair bit-identically: exercises the merge
            // path of the cache update.
            const Particle& p =
                belief.particle(static_cast<std::size_t>(rng.uniform_int(
                    static_cast<int>(belief.count()))));
            prior = p.prior_state;
            posterior = p.state;
        } else {
            prior = gaussian_sample(env.map().x0, spread, rng);
            posterior = env.transition_sample(prior, action, rng);
        }
        const double z = env.observation_density(obs, action, posterior);

        auto t0 = clock_t_::now();
        const InsertResult ir = belief.insert(posterior, z, prior, 1.0);
        const double h_inc = boers_update(cache, belief, ir, action, obs, env);
        res.incremental_seconds += seconds_since(t0);

        t0 = clock_t_::now();
        const double h_batch = boers_batch(belief, action, obs, env);
        res.batch_seconds += seconds_since(t0);

        if ((i + 1) % check_every == 0 || i + 1 == n_insertions) {
            const double rel = std::abs(h_inc - h_batch) / std::max(1e-30, std::abs(h_batch));
            res.max_err = std::max(res.max_err, rel);
        }
    }
    return res;
}

SweepResult lvu_sweep(int n_updates, std::uint64_t seed) {
    Rng rng(seed);
    BeliefTree tree;
    const std::int32_t root = tree.make_root(WeightedParticleBelief{}, 0.0);
    tree.node(root).rollout_value = rng.uniform(-1.0, 1.0);
    tree.node(root).value = tree.node(root).rollout_value;
    const double gamma = 0.95;

    SweepResult res;
    res.steps = n_updates;

    for (int step = 0; step < n_updates; ++step) {
        // Pick or create an action child of the root.
        std::int32_t ha;
        const BeliefNode& rn = tree.node(root);
        if (rn.children.empty() || (rn.children.size() < 12 && rng.uniform_int(10) == 0)) {
            ha = tree.add_action_child(root, static_cast<int>(rn.children.size()));
        } else {
            ha = rn.children[static_cast<std::size_t>(
                rng.uniform_int(static_cast<int>(rn.children.size())))];
        }
        const double q_prev = tree.action(ha).q;

        // Pick or create an observation branch; touch it with fresh rho and
        // value estimates, exactly the bookkeeping the planner performs.
        std::size_t branch_idx;
        double rho_prev, v_prev, v_used;
        ActionNode& a0 = tree.action(ha);
        if (a0.branches.empty() || (a0.branches.size() < 8 && rng.uniform_int(6) == 0)) {
            const std::int32_t hao = tree.add_belief_child(ha, {0.0, 0.0}, false);
            branch_idx = tree.action(ha).branches.size() - 1;
            BeliefNode& child = tree.node(hao);
            child.rollout_value = rng.uniform(-1.0, 1.0);
            child.value = child.rollout_value;
            child.rho = rng.uniform(-1.0, 1.0);
            rho_prev = 0.0;
            v_prev = 0.0;
            v_used = child.value;
        } else {
            branch_idx = static_cast<std::size_t>(
                rng.uniform_int(static_cast<int>(a0.branches.size())));
            BeliefNode& child = tree.node(tree.action(ha).branches[branch_idx].node);
            rho_prev = child.rho;
            v_prev = child.value;
            child.rho = rng.uniform(-1.0, 1.0);
            child.value = rng.uniform(-1.0, 1.0);
            child.visits += 1;
            v_used = child.value;
        }

        ActionNode& a = tree.action(ha);
        a.visits += 1;
        a.branches[branch_idx].visits += 1;
        const BeliefNode& child = tree.node(a.branches[branch_idx].node);
        const double q =
            lvu_update_q(a, a.branches[branch_idx], child.rho, rho_prev, v_used, v_prev, gamma);
        res.max_err = std::max(res.max_err, std::abs(q - full_recompute_q(tree, ha, gamma)));

        BeliefNode& r = tree.node(root);
        r.visits += 1;
        const double v = lvu_update_v(r, tree.action(ha), q, q_prev);
        res.max_err = std::max(res.max_err, std::abs(v - full_recompute_v(tree, root)));
    }
    return res;
}

}  // namespace rhoplan
