#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rhoplan/belief.hpp"
#include "rhoplan/geometry.hpp"

namespace rhoplan {

// Belief (history) node. Created with its rollout value counted as the first
// visit, so N(h) = 1 + sum over action children of N(ha) at all times and
//   V(h) = (1/N(h)) [Rollout(h) + sum_a N(ha) Q(ha)].
// rho / entropy describe this node in its role as an observation child of the
// action node above it; rho_prev / value_prev are the snapshots taken at the
// top of each visit for the last-value update.
struct BeliefNode {
    std::int32_t id = -1;
    std::int32_t parent_action = -1;  // -1 for the root
    std::int32_t creation_index = 0;  // 1-based order among the parent's branches
    int depth = 0;                    // observation depth from the root
    std::int64_t visits = 1;          // N(h)
    double value = 0.0;               // V(h)
    double rollout_value = 0.0;       // fixed at creation, never re-run
    double rho = 0.0;                 // latest rho(hao)
    double rho_prev = 0.0;
    double value_prev = 0.0;
    double entropy = 0.0;             // latest entropy estimate of `belief`
    double state_reward_num = 0.0;    // running sum_i w'_i R_s(pair_i)
    bool terminal = false;
    Vec2 obs;                         // observation that labels this branch
    std::vector<std::int32_t> children;  // action node ids
    WeightedParticleBelief belief;
};

// Observation branch bookkeeping held by the action node. The branch count
// N(hao) counts SimulateQ touches of the branch (creation included), which at
// the deepest layer keeps counting even though the child belief node itself
// is never re-entered.
struct ObsBranch {
    std::int32_t node = -1;       // belief node id
    std::int64_t visits = 0;      // N(hao)
    std::int64_t gen_count = 0;   // times proposed by widening (POMCPOW's M)
};

struct ActionNode {
    std::int32_t id = -1;
    std::int32_t parent = -1;         // belief node id
    std::int32_t creation_index = 0;  // 1-based order among the parent's children
    int action = 0;
    std::int64_t visits = 0;  // N(ha)
    double q = 0.0;           // Q(ha)
    std::vector<ObsBranch> branches;
};

// Arena of belief and action nodes for one planning invocation. Children are
// contiguous index lists; nothing is allocated per traversal step.
class BeliefTree {
public:
    std::int32_t make_root(WeightedParticleBelief belief, double entropy);
    std::int32_t add_action_child(std::int32_t h, int action);
    std::int32_t add_belief_child(std::int32_t ha, Vec2 obs, bool terminal);

    BeliefNode& node(std::int32_t id) { return nodes_[static_cast<std::size_t>(id)]; }
    const BeliefNode& node(std::int32_t id) const { return nodes_[static_cast<std::size_t>(id)]; }
    ActionNode& action(std::int32_t id) { return actions_[static_cast<std::size_t>(id)]; }
    const ActionNode& action(std::int32_t id) const {
        return actions_[static_cast<std::size_t>(id)];
    }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t action_count() const { return actions_.size(); }
    std::int32_t root() const { return 0; }

    // Structure-and-counts digest (no floating point): node layout, action
    // ids, visit counts. Two planning runs that made the same decisions have
    // equal digests.
    std::uint64_t digest() const;

    // Node count, depth histogram and per-depth particle counts as JSON.
    std::string stats_json() const;

private:
    std::vector<BeliefNode> nodes_;
    std::vector<ActionNode> actions_;
};

// O(1) last-value update of V(h) after a completed child visit:
//   V(h) <- V(h) + (1/N(h)) [N(ha) q_new - (N(ha)-1) q_prev - V(h)].
// Precondition: N(h) and N(ha) already reflect the visit.
double lvu_update_v(BeliefNode& h, const ActionNode& ha, double q_new, double q_prev);

// O(1) last-value update of Q(ha) after a completed branch touch:
//   Q <- Q + (N(hao)/N(ha)) [rho + g v] - ((N(hao)-1)/N(ha)) [rho_prev + g v_prev]
//        - Q/N(ha).
double lvu_update_q(ActionNode& ha, const ObsBranch& branch, double rho_new, double rho_prev,
                    double v_new, double v_prev, double gamma);

// Exact recomputations over the children; test oracles, never on the planning
// hot path.
double full_recompute_v(const BeliefTree& tree, std::int32_t h);
double full_recompute_q(const BeliefTree& tree, std::int32_t ha, double gamma);

}  // namespace rhoplan
