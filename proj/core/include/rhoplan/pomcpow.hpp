#pragma once

#include "rhoplan/planner.hpp"

namespace rhoplan {

// Classic POMCPOW: progressive widening on actions and observations, weighted
// per-node particle beliefs for resampling, running-average backups over
// cumulative discounted state rewards. No belief-dependent terms enter the
// returns; with piggyback_info set, the incremental entropy caches are
// maintained anyway so their upkeep cost can be measured on the same tree.
class PomcpowPlanner {
public:
    PomcpowPlanner(const ProblemModel& model, PlannerConfig config);

    PlanResult plan(const WeightedParticleBelief& root_belief, double root_entropy, Rng& rng);

private:
    double simulate(std::int32_t h, Vec2 s, int depth, Rng& rng);
    void insert_pair(std::int32_t hao, Vec2 posterior, Vec2 prior, int action);

    const ProblemModel& model_;
    PlannerConfig cfg_;
    BeliefTree tree_;
    PlanStats stats_;
};

}  // namespace rhoplan
