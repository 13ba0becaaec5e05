#include <cmath>
#include <fstream>
#include <stdexcept>

#include "rhoplan/harness.hpp"
#include "rhoplan/pomcpow.hpp"

namespace rhoplan {

namespace {

TimingCurve run_curve(const std::string& variant, const std::string& planner_id,
                      const BeaconWorld& env, PlannerConfig cfg, std::int64_t iterations,
                      std::uint64_t seed, int root_particles) {
    cfg.iteration_budget = iterations;
    cfg.time_budget_seconds = -1.0;
    cfg.collect_timing = true;

    Rng belief_rng(derive_seed(seed, 1));
    const WeightedParticleBelief root = env.initial_belief(belief_rng, root_particles);
    Rng plan_rng(derive_seed(seed, 2));
    const PlanResult res =
        plan_with(planner_id, env, cfg, root, env.initial_belief_entropy(), plan_rng);

    TimingCurve curve;
    curve.variant = variant;
    curve.cumulative_seconds = res.stats.cumulative_seconds;
    curve.tree_digest = res.stats.tree_digest;
    curve.chosen_action = res.action;
    return curve;
}

void require_same_tree(const TimingCurve& a, const TimingCurve& b) {
    if (a.tree_digest != b.tree_digest || a.chosen_action != b.chosen_action)
        throw std::runtime_error("timing profile: paired runs diverged (" + a.variant + " vs " +
                                 b.variant + "); the isolation premise is broken");
}

}  // namespace

ProfileResult profile_reward_modes(const BeaconWorld& env, PlannerConfig base,
                                   std::int64_t iterations, std::uint64_t seed,
                                   int root_particles) {
    ProfileResult out;
    PlannerConfig inc = base;
    inc.incremental_rewards = true;
    out.curves.push_back(
        run_curve("rho_incremental", "rhopomcpow", env, inc, iterations, seed, root_particles));
    PlannerConfig scratch = base;
    scratch.incremental_rewards = false;
    out.curves.push_back(run_curve("rho_from_scratch", "rhopomcpow", env, scratch, iterations,
                                   seed, root_particles));
    require_same_tree(out.curves[0], out.curves[1]);
    return out;
}

ProfileResult profile_pomcpow_upkeep(const BeaconWorld& env, PlannerConfig base,
                                     std::int64_t iterations, std::uint64_t seed,
                                     int root_particles) {
    ProfileResult out;
    PlannerConfig plain = base;
    plain.piggyback_info = false;
    out.curves.push_back(
        run_curve("pomcpow", "pomcpow", env, plain, iterations, seed, root_particles));
    PlannerConfig upkeep = base;
    upkeep.piggyback_info = true;
    out.curves.push_back(run_curve("pomcpow_reward_upkeep", "pomcpow", env, upkeep, iterations,
                                   seed, root_particles));
    require_same_tree(out.curves[0], out.curves[1]);
    return out;
}

double loglog_slope(const TimingCurve& curve, std::int64_t t_lo, std::int64_t t_hi) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::int64_t n = 0;
    for (std::int64_t t = t_lo; t <= t_hi && t <= static_cast<std::int64_t>(
                                                     curve.cumulative_seconds.size());
         ++t) {
        const double c = curve.cumulative_seconds[static_cast<std::size_t>(t - 1)];
        if (c <= 0.0) continue;
        const double x = std::log(static_cast<double>(t));
        const double y = std::log(c);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("loglog_slope: not enough samples in window");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

void write_timings_csv(const std::string& path, const std::vector<TimingCurve>& curves) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "iteration,cumulative_seconds,variant\n";
    for (const TimingCurve& c : curves)
        for (std::size_t i = 0; i < c.cumulative_seconds.size(); ++i)
            out << (i + 1) << "," << format_double(c.cumulative_seconds[i]) << "," << c.variant
                << "\n";
}

}  // namespace rhoplan
