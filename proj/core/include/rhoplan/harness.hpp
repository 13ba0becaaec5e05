#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rhoplan/envs.hpp"
#include "rhoplan/planner.hpp"

namespace rhoplan {

struct Budget {
    enum class Kind { Iterations, Seconds } kind = Kind::Iterations;
    double value = 0.0;

    std::string label() const;
    void apply(PlannerConfig& cfg) const;
};

// Fully resolved experiment description. Everything that affects outputs is
// derived from this plus the master seed, so a run can be replayed exactly
// from its manifest.
struct ExperimentConfig {
    std::string problem = "lightdark2d";
    MapConfig map;
    std::vector<std::string> planners;          // planner ids, report order
    std::vector<PlannerConfig> planner_configs;  // parallel to `planners`
    std::vector<Budget> budgets;
    int episodes = 100;
    std::uint64_t master_seed = 1;
    int threads = 1;
    int root_particles = 500;
    std::string report_metric;  // "state_return" or "shaped_return"
    std::string output_dir = "out";

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
    std::string to_json_text() const;  // canonical form stored in the manifest

    void validate_or_throw() const;
};

struct RunRecord {
    int episode = 0;
    std::uint64_t seed = 0;
    double state_return = 0.0;   // discounted sum of realized state rewards
    double shaped_return = 0.0;  // plus lambda * realized information gain
    int steps = 0;
    double initial_entropy = 0.0;
    double terminal_entropy = 0.0;
    std::vector<double> plan_seconds;  // wall clock per planning call
};

struct SummaryRow {
    std::string planner;
    std::string budget;
    double mean = 0.0;
    double stderr_ = 0.0;
    int n = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    // records[planner_index][budget_index][episode]
    std::vector<std::vector<std::vector<RunRecord>>> records;
    std::vector<SummaryRow> summary;
};

// Runs all (planner, budget, episode) combinations, episodes in parallel
// across `config.threads` workers. Per-episode generator streams are derived
// from (master_seed, planner index, budget index, episode index), so results
// do not depend on the thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes summary.csv, records.csv and manifest.json under dir.
void emit_reports(const ExperimentResult& result, const std::string& dir);

// run_experiment + emit_reports from a previously written manifest;
// output_dir_override redirects the outputs when non-empty.
ExperimentResult run_from_manifest(const std::string& manifest_path,
                                   const std::string& output_dir_override = "");

// dispatch by planner id: "rhopomcpow", "pomcpow" or "pft_dpw"
PlanResult plan_with(const std::string& planner_id, const ProblemModel& model,
                     const PlannerConfig& cfg, const WeightedParticleBelief& root_belief,
                     double root_entropy, Rng& rng);

// Bootstrap filter step: resample n particles, propagate through the action,
// reweight by the observation likelihood.
WeightedParticleBelief filter_update(const ProblemModel& model,
                                     const WeightedParticleBelief& belief, int action, Vec2 obs,
                                     int n_particles, Rng& rng);

// ---------------------------------------------------------------------------
// Timing profiles (planning time as a function of iterations)

struct TimingCurve {
    std::string variant;
    std::vector<double> cumulative_seconds;  // index i = after iteration i+1
    std::uint64_t tree_digest = 0;
    int chosen_action = -1;
};

struct ProfileResult {
    std::vector<TimingCurve> curves;
};

// Identical-tree pair differing only in the incremental flag. Throws if the
// two runs diverge structurally (the isolation premise would be broken).
ProfileResult profile_reward_modes(const BeaconWorld& env, PlannerConfig base,
                                   std::int64_t iterations, std::uint64_t seed,
                                   int root_particles);

// POMCPOW against POMCPOW that additionally maintains the reward caches it
// never reads; same-tree pair isolating reward upkeep cost.
ProfileResult profile_pomcpow_upkeep(const BeaconWorld& env, PlannerConfig base,
                                     std::int64_t iterations, std::uint64_t seed,
                                     int root_particles);

// Least-squares slope of log(cumulative seconds) against log(iteration) over
// iterations in [t_lo, t_hi].
double loglog_slope(const TimingCurve& curve, std::int64_t t_lo, std::int64_t t_hi);

void write_timings_csv(const std::string& path, const std::vector<TimingCurve>& curves);

// ---------------------------------------------------------------------------
// Visitation-bound experiment

struct BoundsRow {
    std::string path;  // e.g. "a1.o2.a1"
    int tau = 0;       // observation depth of the node
    std::int64_t t = 0;
    std::int64_t n_observed = 0;
    double k_bound = 0.0;
    double threshold_k = 0.0;
    bool pass = true;
    bool vacuous = false;
};

struct BoundsResult {
    std::vector<BoundsRow> rows;
    std::int64_t violations = 0;        // non-vacuous bound failures
    std::int64_t vacuous_count = 0;     // bounds below 1, flagged not asserted
    std::int64_t def1_checks = 0;       // direct parent/child strategy checks
    std::int64_t def1_violations = 0;
};

// Plans on a synthetic depth-2 problem with the consistent strategies and
// checks every realized path against its deterministic visitation bound at
// the given iteration checkpoints.
BoundsResult bounds_experiment(const std::vector<std::int64_t>& checkpoints,
                               const ConsistencyParams& params, std::uint64_t seed);

void write_bounds_csv(const std::string& path, const std::vector<BoundsRow>& rows);

// ---------------------------------------------------------------------------
// Incremental-vs-batch oracle sweeps

struct SweepResult {
    double max_err = 0.0;  // absolute for Shannon/LVU, relative for Boers
    double incremental_seconds = 0.0;
    double batch_seconds = 0.0;
    std::int64_t steps = 0;
};

// Randomized insertions (bit-identical merges included); compares the O(1)
// entropy update against recomputation at every step and times both paths.
SweepResult shannon_sweep(int n_insertions, std::uint64_t seed);

// Insertion sequence under a benchmark model; compares the O(N) cache update
// against the O(N^2) batch estimator every `check_every` steps and times
// cumulative cost of both.
SweepResult boers_sweep(const BeaconWorld& env, int n_insertions, int check_every,
                        std::uint64_t seed);

// Randomized tree growth; incremental V and Q against full recomputation
// after every update.
SweepResult lvu_sweep(int n_updates, std::uint64_t seed);

// ---------------------------------------------------------------------------

std::string format_double(double v);  // locale-independent shortest exact form

}  // namespace rhoplan
