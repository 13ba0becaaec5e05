#pragma once

// Test-only reference: a from-scratch transcription of the two-procedure
// state-simulator search with last-value backups recomputed by full
// summation at every step, and expected state rewards re-averaged over the
// stored pairs each touch. No incremental caches anywhere. Generator
// consumption mirrors the production planner call for call, so a shared seed
// must reproduce the same tree.

#include <cstdint>
#include <vector>

#include "rhoplan/belief.hpp"
#include "rhoplan/model.hpp"
#include "rhoplan/planner.hpp"

namespace rhoplan::testing {

class ReferenceStatePlanner {
public:
    struct Pair {
        Vec2 post;
        double w;
        Vec2 prior;
    };
    struct ONode {
        std::vector<Pair> pairs;
        double wsum = 0.0;
        std::int64_t n = 1;       // node visit count, rollout counted
        std::int64_t branch_n = 1;  // touch count kept by the action node
        std::int64_t gen = 1;
        double v = 0.0;
        double rollout = 0.0;
        double rho = 0.0;
        Vec2 obs;
        std::vector<int> actions;  // indices into actions_
        int depth = 0;
        bool terminal = false;
    };
    struct ANode {
        int action = 0;
        int parent = 0;  // index into nodes_
        std::int64_t n = 0;
        double q = 0.0;
        std::vector<int> children;  // indices into nodes_
    };

    ReferenceStatePlanner(const ProblemModel& model, DpwParams dpw, int max_depth,
                          int init_particles)
        : model_(model), dpw_(dpw), max_depth_(max_depth), init_particles_(init_particles) {}

    int plan(const WeightedParticleBelief& root_belief, std::int64_t iterations, Rng& rng) {
        nodes_.clear();
        actions_.clear();
        nodes_.push_back(ONode{});
        for (std::size_t i = 0; i < root_belief.count(); ++i)
            nodes_[0].pairs.push_back({root_belief.particle(i).state,
                                       root_belief.particle(i).weight,
                                       root_belief.particle(i).prior_state});
        for (const Pair& p : nodes_[0].pairs) nodes_[0].wsum += p.w;

        for (std::int64_t t = 0; t < iterations; ++t) {
            const Vec2 s = nodes_[0].pairs[sample_pair(0, rng)].post;
            simulate_v(0, s, max_depth_, rng);
        }
        int best = -1;
        double best_q = 0.0;
        for (const int ha : nodes_[0].actions) {
            if (best < 0 || actions_[ha].q > best_q) {
                best_q = actions_[ha].q;
                best = actions_[ha].action;
            }
        }
        return best;
    }

    const ONode& root() const { return nodes_[0]; }
    const std::vector<ANode>& actions() const { return actions_; }
    std::size_t node_count() const { return nodes_.size(); }

private:
    std::size_t sample_pair(int node, Rng& rng) {
        const double target = rng.uniform01() * nodes_[node].wsum;
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_[node].pairs.size(); ++i) {
            acc += nodes_[node].pairs[i].w;
            if (target < acc) return i;
        }
        return nodes_[node].pairs.size() - 1;
    }

    int select_action(int h) {
        ONode& node = nodes_[h];
        const double cap =
            dpw_.k_a * std::pow(static_cast<double>(node.n), dpw_.alpha_a);
        if (static_cast<int>(node.actions.size()) < model_.action_count() &&
            static_cast<double>(node.actions.size()) <= cap) {
            ANode a;
            a.action = static_cast<int>(node.actions.size());
            a.parent = h;
            actions_.push_back(a);
            node.actions.push_back(static_cast<int>(actions_.size()) - 1);
            return node.actions.back();
        }
        int best = -1;
        double best_score = 0.0;
        for (const int ha : node.actions) {
            const double score =
                actions_[ha].n == 0
                    ? std::numeric_limits<double>::infinity()
                    : actions_[ha].q + dpw_.c * std::sqrt(std::log(static_cast<double>(node.n)) /
                                                          static_cast<double>(actions_[ha].n));
            if (best < 0 || score > best_score) {
                best_score = score;
                best = ha;
            }
        }
        return best;
    }

    double state_term(const ONode& node, int action) const {
        double num = 0.0;
        for (const Pair& p : node.pairs) num += p.w * model_.state_reward(p.prior, action, p.post);
        return num / node.wsum;
    }

    double recompute_q(int ha) const {
        const ANode& a = actions_[ha];
        double sum = 0.0;
        for (const int c : a.children)
            sum += static_cast<double>(nodes_[c].branch_n) *
                   (nodes_[c].rho + model_.discount() * nodes_[c].v);
        return sum / static_cast<double>(a.n);
    }

    double recompute_v(int h) const {
        const ONode& node = nodes_[h];
        double sum = node.rollout;
        for (const int ha : node.actions)
            sum += static_cast<double>(actions_[ha].n) * actions_[ha].q;
        return sum / static_cast<double>(node.n);
    }

    double simulate_v(int h, Vec2 s, int depth, Rng& rng) {
        if (depth == 0) return 0.0;
        const int ha = select_action(h);
        const double q = simulate_q(ha, s, depth, rng);
        (void)q;
        nodes_[h].n += 1;
        nodes_[h].v = recompute_v(h);
        return nodes_[h].v;
    }

    double simulate_q(int ha, Vec2 s, int depth, Rng& rng) {
        const int action = actions_[ha].action;
        const Vec2 s_next = model_.transition_sample(s, action, rng);
        const bool terminal = model_.action_terminates(action);

        const double cap =
            dpw_.k_o * std::pow(static_cast<double>(actions_[ha].n), dpw_.alpha_o);
        int child;
        if (static_cast<double>(actions_[ha].children.size()) <= cap) {
            ONode node;
            node.obs = model_.observation_sample(action, s_next, rng);
            node.terminal = terminal;
            append_pair(node, s_next, s, action);
            const int parent = actions_[ha].parent;
            for (int k = 1; k < init_particles_; ++k) {
                const Vec2 prior = nodes_[parent].pairs[sample_pair(parent, rng)].post;
                append_pair(node, model_.transition_sample(prior, action, rng), prior, action);
            }
            node.rho = state_term(node, action);
            node.rollout = terminal ? 0.0 : rollout_return(model_, s_next, depth - 1, rng);
            node.v = node.rollout;
            nodes_.push_back(std::move(node));
            child = static_cast<int>(nodes_.size()) - 1;
            actions_[ha].children.push_back(child);
        } else {
            std::int64_t total = 0;
            for (const int c : actions_[ha].children) total += nodes_[c].gen;
            std::int64_t pick =
                static_cast<std::int64_t>(rng.uniform01() * static_cast<double>(total));
            if (pick >= total) pick = total - 1;
            child = actions_[ha].children.back();
            for (const int c : actions_[ha].children) {
                pick -= nodes_[c].gen;
                if (pick < 0) {
                    child = c;
                    break;
                }
            }
            append_pair(nodes_[child], s_next, s, action);
            nodes_[child].rho = state_term(nodes_[child], action);
            if (!terminal) {
                const Vec2 resampled = nodes_[child].pairs[sample_pair(child, rng)].post;
                simulate_v(child, resampled, depth - 1, rng);
            }
            nodes_[child].branch_n += 1;
        }

        actions_[ha].n += 1;
        actions_[ha].q = recompute_q(ha);
        return actions_[ha].q;
    }

    void append_pair(ONode& node, Vec2 post, Vec2 prior, int action) {
        const double w = model_.observation_density(node.obs, action, post);
        node.pairs.push_back({post, std::max(w, 1e-300), prior});
        node.wsum += node.pairs.back().w;
    }

    const ProblemModel& model_;
    DpwParams dpw_;
    int max_depth_;
    int init_particles_;
    std::vector<ONode> nodes_;
    std::vector<ANode> actions_;
};

}  // namespace rhoplan::testing
