// Acceptance suite: one test case per release criterion, each printing a
// single PASS/FAIL line. Tolerances and thresholds are pinned here, in code.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "rhoplan/entropy.hpp"
#include "rhoplan/harness.hpp"
#include "rhoplan/synthetic.hpp"

using namespace rhoplan;

namespace {

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
}

int worker_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(8u, hw == 0 ? 1u : hw));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("criterion 1: incremental Shannon oracle, 10k insertions, 100x speedup") {
    const SweepResult r = shannon_sweep(10000, 424242);
    const double speedup = r.batch_seconds / r.incremental_seconds;
    const bool pass = r.max_err <= 1e-9 && speedup >= 100.0;
    std::ostringstream ss;
    ss << "max |inc - batch| = " << r.max_err << " (<= 1e-9), speedup x" << speedup
       << " (>= 100)";
    report(1, pass, ss.str());
    CHECK(r.max_err <= 1e-9);
    CHECK(speedup >= 100.0);
}

TEST_CASE("criterion 2: incremental Boers oracle to N=2000, 50x speedup") {
    const auto env = make_benchmark("lightdark2d");
    const SweepResult r = boers_sweep(*env, 2000, 100, 777);
    const double speedup = r.batch_seconds / r.incremental_seconds;
    const bool pass = r.max_err <= 1e-8 && speedup >= 50.0;
    std::ostringstream ss;
    ss << "max rel err = " << r.max_err << " (<= 1e-8), speedup x" << speedup << " (>= 50)";
    report(2, pass, ss.str());
    CHECK(r.max_err <= 1e-8);
    CHECK(speedup >= 50.0);
}

TEST_CASE("criterion 3: single-particle Boers equals -log T at the transition mode") {
    const auto env = make_benchmark("lightdark2d");
    const Vec2 s{0.0, 0.0};
    const Vec2 s_next{1.0, 0.0};  // mode of the action-0 transition
    WeightedParticleBelief b;
    const InsertResult ir = b.insert(s_next, 1.0, s, 1.0);

    const double expected = -std::log(env->transition_density(s_next, s, 0));
    const double batch = boers_batch(b, 0, {0.4, -0.2}, *env);
    BoersCache cache;
    boers_init(cache, 0, {0.4, -0.2});
    const double incremental = boers_update(cache, b, ir, 0, {0.4, -0.2}, *env);

    const bool pass = std::abs(batch - expected) <= 1e-12 &&
                      std::abs(incremental - expected) <= 1e-12 &&
                      std::abs(expected - (-std::log(1.5915494309189535))) <= 1e-12;
    std::ostringstream ss;
    ss << "H = " << batch << " vs -log(1.59154943...) = " << expected << " (|diff| <= 1e-12)";
    report(3, pass, ss.str());
    CHECK(std::abs(batch - expected) <= 1e-12);
    CHECK(std::abs(incremental - expected) <= 1e-12);
}

TEST_CASE("criterion 4: LVU oracle over 100k randomized tree updates") {
    const SweepResult r = lvu_sweep(100000, 99);
    const bool pass = r.max_err <= 1e-9;
    std::ostringstream ss;
    ss << "max |inc - recompute| = " << r.max_err << " (<= 1e-9) over " << r.steps
       << " updates";
    report(4, pass, ss.str());
    CHECK(r.max_err <= 1e-9);
}

TEST_CASE("criterion 5: deterministic visitation bounds on the synthetic depth-2 problem") {
    ConsistencyParams params;  // alpha_a = alpha_o = 1/2, e = 0.5
    const BoundsResult r = bounds_experiment({100, 1000, 10000}, params, 31337);

    std::int64_t asserted = 0;
    for (const BoundsRow& row : r.rows)
        if (!row.vacuous && static_cast<double>(row.t) >= row.threshold_k) ++asserted;

    const bool pass = r.violations == 0 && r.def1_violations == 0 && asserted >= 3;
    std::ostringstream ss;
    ss << r.rows.size() << " path checks, " << asserted << " asserted, " << r.vacuous_count
       << " vacuous (<1) flagged, " << r.violations << " violations; "
       << r.def1_checks << " direct strategy checks, " << r.def1_violations << " violations";
    report(5, pass, ss.str());
    CHECK(r.violations == 0);
    CHECK(r.def1_violations == 0);
    CHECK(asserted >= 3);
}

TEST_CASE("criterion 6: complexity slopes on identical trees") {
    const auto env = make_benchmark("lightdark2d");
    PlannerConfig base;  // benchmark parameters for the shaped planner
    base.dpw.c = 120.0;
    base.dpw.k_o = 6.0;
    base.dpw.alpha_o = 1.0 / 30.0;
    const std::int64_t T = 20000;

    // Throws on digest mismatch, which would already fail the criterion.
    const ProfileResult modes = profile_reward_modes(*env, base, T, 5, 300);
    PlannerConfig pom = base;
    pom.dpw.c = 100.0;
    pom.dpw.k_o = 4.0;
    const ProfileResult upkeep = profile_pomcpow_upkeep(*env, pom, T, 5, 300);

    const double inc = loglog_slope(modes.curves[0], 1000, 10000);
    const double scratch = loglog_slope(modes.curves[1], 1000, 10000);
    const double pomcpow = loglog_slope(upkeep.curves[0], 1000, 10000);
    const double gap = scratch - inc;

    // Asymptotic-window slopes for the cubic/quadratic comparison.
    const double inc_tail = loglog_slope(modes.curves[0], 8000, T);
    const double scratch_tail = loglog_slope(modes.curves[1], 8000, T);

    const bool pass = gap >= 0.8 && pomcpow <= inc && std::abs(scratch_tail - 3.0) <= 0.5 &&
                      std::abs(inc_tail - 2.0) <= 0.5;
    std::ostringstream ss;
    ss << "digests match; [1e3,1e4] slopes: incremental " << inc << ", from-scratch "
       << scratch << " (gap " << gap << " >= 0.8), pomcpow " << pomcpow
       << " <= incremental; tail slopes " << inc_tail << " (2 +- 0.5), " << scratch_tail
       << " (3 +- 0.5)";
    report(6, pass, ss.str());
    CHECK(gap >= 0.8);
    CHECK(pomcpow <= inc);
    CHECK(std::abs(scratch_tail - 3.0) <= 0.5);
    CHECK(std::abs(inc_tail - 2.0) <= 0.5);

    std::filesystem::create_directories("acceptance_out");
    std::vector<TimingCurve> curves = modes.curves;
    curves.insert(curves.end(), upkeep.curves.begin(), upkeep.curves.end());
    write_timings_csv("acceptance_out/timings.csv", curves);
}

TEST_CASE("criterion 7: light-dark shaping gap over 300 episodes at matched budgets") {
    std::ostringstream config;
    config << R"({
        "problem": "lightdark2d",
        "planners": ["rhopomcpow", "pomcpow"],
        "planner_params": {"init_particles": 30},
        "per_planner_params": {"pomcpow": {"init_particles": 1}},
        "budgets": [{"iterations": 1000}, {"iterations": 3000}],
        "episodes": 300, "seed": 20260808, "root_particles": 1000,
        "threads": )"
           << worker_threads() << "}";
    const ExperimentResult res =
        run_experiment(ExperimentConfig::from_json_text(config.str()));

    const SummaryRow& shaped_lo = res.summary[0];
    const SummaryRow& shaped = res.summary[1];    // rhopomcpow, 3000 iters
    const SummaryRow& unshaped = res.summary[3];  // pomcpow, 3000 iters
    const double gap = shaped.mean - unshaped.mean;
    const double pooled =
        std::sqrt(shaped.stderr_ * shaped.stderr_ + unshaped.stderr_ * unshaped.stderr_);
    // Statistical non-decrease across budgets: no significant drop.
    const double budget_pooled = std::sqrt(shaped.stderr_ * shaped.stderr_ +
                                           shaped_lo.stderr_ * shaped_lo.stderr_);
    const bool monotone = shaped.mean - shaped_lo.mean > -2.0 * budget_pooled;
    const bool pass = gap > 2.0 * pooled && monotone;
    std::ostringstream ss;
    ss << "shaped " << shaped.mean << " +- " << shaped.stderr_ << " vs unshaped "
       << unshaped.mean << " +- " << unshaped.stderr_ << "; gap " << gap << " > 2 x pooled SE "
       << 2.0 * pooled << "; budget trend " << shaped_lo.mean << " -> " << shaped.mean;
    report(7, pass, ss.str());
    CHECK(gap > 2.0 * pooled);
    CHECK(monotone);

    std::filesystem::create_directories("acceptance_out/lightdark");
    emit_reports(res, "acceptance_out/lightdark");
}

TEST_CASE("criterion 8: active localization entropy drop and budget trend, 300 episodes") {
    std::ostringstream config;
    config << R"({
        "problem": "active_localization",
        "planners": ["rhopomcpow"],
        "planner_params": {"init_particles": 10},
        "budgets": [{"iterations": 100}, {"iterations": 1000}],
        "episodes": 300, "seed": 90210, "root_particles": 300,
        "threads": )"
           << worker_threads() << "}";
    const ExperimentResult res =
        run_experiment(ExperimentConfig::from_json_text(config.str()));

    double terminal_entropy = 0.0;
    const double initial_entropy = res.records[0][1][0].initial_entropy;
    for (const RunRecord& r : res.records[0][1]) terminal_entropy += r.terminal_entropy;
    terminal_entropy /= static_cast<double>(res.records[0][1].size());

    const SummaryRow& low = res.summary[0];
    const SummaryRow& high = res.summary[1];
    const bool pass = terminal_entropy < initial_entropy && high.mean > low.mean;
    std::ostringstream ss;
    ss << "mean terminal Boers entropy " << terminal_entropy << " < initial "
       << initial_entropy << "; return " << low.mean << " (100 iters) -> " << high.mean
       << " (1000 iters)";
    report(8, pass, ss.str());
    CHECK(terminal_entropy < initial_entropy);
    CHECK(high.mean > low.mean);

    std::filesystem::create_directories("acceptance_out/active_localization");
    emit_reports(res, "acceptance_out/active_localization");
}

TEST_CASE("criterion 9: manifest replay is byte-identical across runs and thread counts") {
    const std::string base = "acceptance_out/replay";
    for (const char* d : {"/a", "/b", "/c"}) std::filesystem::remove_all(base + d);
    std::filesystem::create_directories(base);

    auto config_text = [&](int threads, const std::string& out) {
        std::ostringstream ss;
        ss << R"({"problem": "lightdark2d", "planners": ["rhopomcpow"],
                  "budgets": [{"iterations": 100}], "episodes": 12, "seed": 6021023,
                  "root_particles": 120, "threads": )"
           << threads << R"(, "output_dir": ")" << out << "\"}";
        return ss.str();
    };

    emit_reports(run_experiment(ExperimentConfig::from_json_text(config_text(1, base + "/a"))),
                 base + "/a");
    run_from_manifest(base + "/a/manifest.json", base + "/b");
    emit_reports(run_experiment(ExperimentConfig::from_json_text(config_text(8, base + "/c"))),
                 base + "/c");

    const std::string a = slurp(base + "/a/summary.csv");
    const bool replay_equal = a == slurp(base + "/b/summary.csv");
    const bool threads_equal = a == slurp(base + "/c/summary.csv");
    const bool pass = replay_equal && threads_equal;
    std::ostringstream ss;
    ss << "summary.csv byte-identical: replay " << (replay_equal ? "yes" : "NO")
       << ", 1 vs 8 threads " << (threads_equal ? "yes" : "NO");
    report(9, pass, ss.str());
    CHECK(replay_equal);
    CHECK(threads_equal);
}
