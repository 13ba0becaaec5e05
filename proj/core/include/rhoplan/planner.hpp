#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include "rhoplan/belief.hpp"
#include "rhoplan/model.hpp"
#include "rhoplan/rng.hpp"
#include "rhoplan/select.hpp"
#include "rhoplan/tree.hpp"

namespace rhoplan {

enum class SelectionKind { Dpw, Auger };

struct PlannerConfig {
    int max_depth = 20;
    // Budgets: negative means unlimited; at most one may be unlimited.
    std::int64_t iteration_budget = -1;
    double time_budget_seconds = -1.0;

    SelectionKind strategy = SelectionKind::Dpw;
    DpwParams dpw;
    AugerParams auger;

    // When false, belief-dependent rewards are recomputed from scratch on
    // every touch instead of through the incremental caches. Values agree to
    // 1e-8 relative; the flag exists for runtime comparisons.
    bool incremental_rewards = true;

    // Particles inserted into a belief node at creation (extra ones are drawn
    // from the same predecessor state and transition).
    int belief_node_init_particles = 1;

    int pft_particle_count = 50;  // m, PFT-DPW only

    // POMCPOW only: maintain the incremental reward caches without using the
    // values, so reward upkeep cost can be measured on an identical tree.
    bool piggyback_info = false;

    std::uint64_t clock_check_interval = 32;  // iterations between clock reads
    bool collect_timing = false;              // per-iteration cumulative seconds
    bool check_invariants = false;            // oracle re-checks, tests only
    bool keep_tree = false;                   // retain the tree in the result

    std::ostream* trace = nullptr;  // JSON-lines iteration trace
    std::function<void(std::int64_t, const BeliefTree&)> iteration_hook;
};

// Throws std::invalid_argument on contract violations (both budgets
// unlimited, non-positive depth, widening exponents outside (0,1), ...).
void validate(const PlannerConfig& config);

struct PlanStats {
    std::int64_t iterations = 0;
    std::size_t belief_nodes = 0;
    std::size_t action_nodes = 0;
    std::int64_t reward_evaluations = 0;
    int max_depth_reached = 0;
    std::uint64_t tree_digest = 0;
    std::vector<double> cumulative_seconds;
};

struct PlanResult {
    int action = -1;
    bool zero_budget_warning = false;
    PlanStats stats;
    std::unique_ptr<BeliefTree> tree;  // populated when keep_tree is set
};

// Default rollout policy: uniform-random over actions, with terminating
// actions excluded until the final third of the remaining depth. Accumulates
// discounted state rewards only.
double rollout_return(const ProblemModel& model, Vec2 s, int depth, Rng& rng);

// State-simulator planner for belief-dependent rewards: grows one weighted
// particle belief per observation node, keeps its entropy estimate and
// expected state reward up to date incrementally, and backs values up with
// O(1) last-value updates (SimulateV / SimulateQ).
class RhoPomcpowPlanner {
public:
    RhoPomcpowPlanner(const ProblemModel& model, PlannerConfig config);

    // root_entropy is the entropy estimate attached to the root belief; it
    // shifts every depth-1 reward by the same constant, so the chosen action
    // does not depend on it.
    PlanResult plan(const WeightedParticleBelief& root_belief, double root_entropy, Rng& rng);

private:
    double simulate_v(std::int32_t h, Vec2 s, int depth, Rng& rng);
    double simulate_q(std::int32_t ha, Vec2 s, int depth, Rng& rng);
    void insert_pair(std::int32_t hao, Vec2 posterior, Vec2 prior, int action, Rng& rng);
    double update_reward(std::int32_t hao, int action);
    ActionSelect select_action(std::int32_t h, Rng& rng);
    ObsSelect select_observation(std::int32_t ha, Vec2 s_next, Rng& rng);

    const ProblemModel& model_;
    PlannerConfig cfg_;
    bool use_info_ = false;
    BeliefTree tree_;
    PlanStats stats_;
    int iter_depth_reached_ = 0;
};

}  // namespace rhoplan
