#pragma once

#include "rhoplan/planner.hpp"

namespace rhoplan {

// Belief-MDP tree search with a fixed number of particles per node. Each new
// observation child propagates the parent's belief through an m-particle
// importance resampling step, and its shaped reward is computed exactly once,
// at creation. Backups are running averages.
class PftDpwPlanner {
public:
    PftDpwPlanner(const ProblemModel& model, PlannerConfig config);

    PlanResult plan(const WeightedParticleBelief& root_belief, double root_entropy, Rng& rng);

private:
    double simulate(std::int32_t b, int depth, Rng& rng);
    std::int32_t expand_belief_child(std::int32_t ha, int action, std::int32_t parent, Rng& rng);

    const ProblemModel& model_;
    PlannerConfig cfg_;
    bool use_info_ = false;
    BeliefTree tree_;
    PlanStats stats_;
};

}  // namespace rhoplan
