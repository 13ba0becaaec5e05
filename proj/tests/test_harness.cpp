#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rhoplan/harness.hpp"

using namespace rhoplan;

namespace {

std::string tiny_config(const std::string& out_dir, int threads) {
    std::ostringstream ss;
    ss << R"({
  "problem": "lightdark2d",
  "planners": ["rhopomcpow"],
  "planner_params": {"max_depth": 6},
  "budgets": [{"iterations": 40}],
  "episodes": 4,
  "seed": 99,
  "root_particles": 60,
  "threads": )"
       << threads << R"(,
  "output_dir": ")"
       << out_dir << R"("
})";
    return ss.str();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// records.csv minus its wall-clock column (the one legitimately
// non-reproducible field).
std::string records_without_timing(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string out, line;
    while (std::getline(in, line)) {
        const std::size_t cut = line.rfind(',');
        out += line.substr(0, cut);
        out += '\n';
    }
    return out;
}

}  // namespace

TEST_CASE("config parsing, defaults and validation errors") {
    const ExperimentConfig c = ExperimentConfig::from_json_text(tiny_config("/tmp/x", 1));
    CHECK(c.problem == "lightdark2d");
    CHECK(c.report_metric == "state_return");  // problem default
    CHECK(c.planner_configs[0].dpw.c == doctest::Approx(120.0));
    CHECK(c.planner_configs[0].dpw.k_o == doctest::Approx(6.0));
    CHECK(c.planner_configs[0].max_depth == 6);

    CHECK_THROWS(ExperimentConfig::from_json_text(R"({"problem":"bogus","budgets":[{"iterations":1}]})"));
    CHECK_THROWS(ExperimentConfig::from_json_text(
        R"({"problem":"lightdark2d","planners":["bogus"],"budgets":[{"iterations":1}]})"));
    CHECK_THROWS(ExperimentConfig::from_json_text(R"({"problem":"lightdark2d"})"));
    CHECK_THROWS(ExperimentConfig::from_json_text(
        R"({"problem":"lightdark2d","budgets":[{"iterations":1}],"episodes":0})"));

    // Active localization defaults to the shaped metric and 10 init particles
    // when configured as in the benchmarks.
    const ExperimentConfig al = ExperimentConfig::from_json_text(
        R"({"problem":"active_localization","budgets":[{"iterations":1}],
            "planner_params":{"init_particles":10}})");
    CHECK(al.report_metric == "shaped_return");
    CHECK(al.planner_configs[0].belief_node_init_particles == 10);

    // Baseline defaults per planner id.
    const ExperimentConfig multi = ExperimentConfig::from_json_text(
        R"({"problem":"lightdark2d","planners":["pomcpow","pft_dpw"],
            "budgets":[{"iterations":1}]})");
    CHECK(multi.planner_configs[0].dpw.c == doctest::Approx(100.0));
    CHECK(multi.planner_configs[0].dpw.k_o == doctest::Approx(4.0));
    CHECK(multi.planner_configs[1].dpw.c == doctest::Approx(80.0));
    CHECK(multi.planner_configs[1].dpw.k_o == doctest::Approx(3.0));
    CHECK(multi.planner_configs[1].dpw.alpha_o == doctest::Approx(1.0 / 40.0));
    CHECK(multi.planner_configs[1].pft_particle_count == 50);
}

TEST_CASE("wall-clock budgets run and stop near the allotted time") {
    ExperimentConfig c = ExperimentConfig::from_json_text(R"({
        "problem": "lightdark2d", "planners": ["rhopomcpow"],
        "planner_params": {"max_depth": 5},
        "budgets": [{"seconds": 0.02}],
        "episodes": 1, "seed": 9, "root_particles": 50})");
    const ExperimentResult res = run_experiment(c);
    CHECK(res.summary[0].budget == "secs:0.02");
    CHECK(std::isfinite(res.summary[0].mean));
    CHECK(res.records[0][0][0].steps >= 1);
}

TEST_CASE("single deterministic episode: summary equals that episode's return") {
    ExperimentConfig c = ExperimentConfig::from_json_text(tiny_config("/tmp/unused", 1));
    c.episodes = 1;
    const ExperimentResult res = run_experiment(c);
    REQUIRE(res.summary.size() == 1);
    CHECK(res.summary[0].n == 1);
    CHECK(res.summary[0].mean == doctest::Approx(res.records[0][0][0].state_return));
    CHECK(res.summary[0].stderr_ == 0.0);
}

TEST_CASE("standard error formula against a direct recomputation") {
    ExperimentConfig c = ExperimentConfig::from_json_text(tiny_config("/tmp/unused", 2));
    c.episodes = 8;
    const ExperimentResult res = run_experiment(c);
    const auto& recs = res.records[0][0];
    double mean = 0.0;
    for (const RunRecord& r : recs) mean += r.state_return;
    mean /= static_cast<double>(recs.size());
    double ss = 0.0;
    for (const RunRecord& r : recs) ss += (r.state_return - mean) * (r.state_return - mean);
    const double sd = std::sqrt(ss / static_cast<double>(recs.size() - 1));
    const double se = sd / std::sqrt(static_cast<double>(recs.size()));
    CHECK(res.summary[0].mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(res.summary[0].stderr_ == doctest::Approx(se).epsilon(1e-12));
}

TEST_CASE("summary table is shaped planner x budget") {
    ExperimentConfig c = ExperimentConfig::from_json_text(R"({
        "problem": "lightdark2d",
        "planners": ["rhopomcpow", "pomcpow"],
        "planner_params": {"max_depth": 5},
        "budgets": [{"iterations": 10}, {"iterations": 25}],
        "episodes": 2, "seed": 5, "root_particles": 40})");
    const ExperimentResult res = run_experiment(c);
    REQUIRE(res.summary.size() == 4);
    CHECK(res.summary[0].planner == "rhopomcpow");
    CHECK(res.summary[0].budget == "iters:10");
    CHECK(res.summary[1].budget == "iters:25");
    CHECK(res.summary[2].planner == "pomcpow");
    for (const SummaryRow& row : res.summary) CHECK(std::isfinite(row.mean));
}

TEST_CASE("emit_reports: golden headers, manifest, empty-record guard") {
    const std::string dir = "/tmp/rhoplan_test_reports";
    std::filesystem::remove_all(dir);
    ExperimentConfig c = ExperimentConfig::from_json_text(tiny_config(dir, 1));
    c.episodes = 2;
    const ExperimentResult res = run_experiment(c);
    emit_reports(res, dir);

    const std::string summary = slurp(dir + "/summary.csv");
    CHECK(summary.rfind("planner,budget,mean,stderr,n\n", 0) == 0);
    const std::string records = slurp(dir + "/records.csv");
    CHECK(records.rfind("planner,budget,episode,seed,steps,state_return,shaped_return,"
                        "initial_entropy,terminal_entropy,total_plan_seconds\n",
                        0) == 0);
    CHECK(slurp(dir + "/manifest.json").find("\"episode_seeds\"") != std::string::npos);

    ExperimentResult empty;
    CHECK_THROWS_AS(emit_reports(empty, dir), std::invalid_argument);
}

TEST_CASE("manifest replay is byte-identical and thread-count independent") {
    const std::string d1 = "/tmp/rhoplan_rep1";
    const std::string d2 = "/tmp/rhoplan_rep2";
    const std::string d3 = "/tmp/rhoplan_rep3";
    for (const auto& d : {d1, d2, d3}) std::filesystem::remove_all(d);

    ExperimentConfig c = ExperimentConfig::from_json_text(tiny_config(d1, 1));
    emit_reports(run_experiment(c), d1);

    run_from_manifest(d1 + "/manifest.json", d2);
    CHECK(slurp(d1 + "/summary.csv") == slurp(d2 + "/summary.csv"));
    CHECK(records_without_timing(d1 + "/records.csv") ==
          records_without_timing(d2 + "/records.csv"));

    // Same manifest, eight workers.
    {
        std::ifstream in(d1 + "/manifest.json");
        std::stringstream ss;
        ss << in.rdbuf();
        std::string manifest = ss.str();
        ExperimentConfig c8 = ExperimentConfig::from_json_text(
            ExperimentConfig::from_json_text(tiny_config(d3, 8)).to_json_text());
        const ExperimentResult res8 = run_experiment(c8);
        emit_reports(res8, d3);
    }
    CHECK(slurp(d1 + "/summary.csv") == slurp(d3 + "/summary.csv"));
    CHECK(records_without_timing(d1 + "/records.csv") ==
          records_without_timing(d3 + "/records.csv"));
}

TEST_CASE("timing profile with a single iteration: one point per curve, equal digests") {
    const auto env = make_benchmark("lightdark2d");
    PlannerConfig base;
    base.max_depth = 6;
    const ProfileResult res = profile_reward_modes(*env, base, 1, 2, 50);
    REQUIRE(res.curves.size() == 2);
    CHECK(res.curves[0].cumulative_seconds.size() == 1);
    CHECK(res.curves[1].cumulative_seconds.size() == 1);
    CHECK(res.curves[0].tree_digest == res.curves[1].tree_digest);
}

TEST_CASE("timing profile: paired curves share a tree, csv schema") {
    const auto env = make_benchmark("lightdark2d");
    PlannerConfig base;
    base.max_depth = 8;
    const ProfileResult res = profile_reward_modes(*env, base, 300, 7, 80);
    REQUIRE(res.curves.size() == 2);
    CHECK(res.curves[0].tree_digest == res.curves[1].tree_digest);
    CHECK(res.curves[0].cumulative_seconds.size() == 300);
    // Cumulative times are non-decreasing.
    for (std::size_t i = 1; i < res.curves[0].cumulative_seconds.size(); ++i)
        CHECK(res.curves[0].cumulative_seconds[i] >= res.curves[0].cumulative_seconds[i - 1]);

    const std::string path = "/tmp/rhoplan_timings.csv";
    write_timings_csv(path, res.curves);
    CHECK(slurp(path).rfind("iteration,cumulative_seconds,variant\n", 0) == 0);

    const ProfileResult up = profile_pomcpow_upkeep(*env, base, 200, 8, 80);
    CHECK(up.curves[0].tree_digest == up.curves[1].tree_digest);
}

TEST_CASE("bounds experiment emits the documented csv and finds no violations") {
    ConsistencyParams params;
    const BoundsResult res = bounds_experiment({100, 400}, params, 3);
    CHECK(res.violations == 0);
    CHECK(res.def1_violations == 0);
    CHECK(res.rows.size() > 10);
    CHECK(res.def1_checks > 0);

    const std::string path = "/tmp/rhoplan_bounds.csv";
    write_bounds_csv(path, res.rows);
    CHECK(slurp(path).rfind("path,tau,t,N_observed,K_bound,threshold_k,pass\n", 0) == 0);

    // The root path bound K_0(t) = t is exercised and non-vacuous.
    bool saw_root = false;
    for (const BoundsRow& r : res.rows)
        if (r.path == "root" && r.t == 400) {
            saw_root = true;
            CHECK(r.k_bound == doctest::Approx(400.0));
            CHECK(r.pass);
        }
    CHECK(saw_root);
}

TEST_CASE("oracle sweeps: small smoke versions") {
    const SweepResult sh = shannon_sweep(2000, 1);
    CHECK(sh.max_err <= 1e-9);
    const auto env = make_benchmark("lightdark2d");
    const SweepResult bo = boers_sweep(*env, 250, 50, 2);
    CHECK(bo.max_err <= 1e-8);
    const SweepResult lv = lvu_sweep(5000, 3);
    CHECK(lv.max_err <= 1e-9);
}

TEST_CASE("filter update produces a reweighted posterior with stored pairs") {
    const auto env = make_benchmark("lightdark2d");
    Rng rng(4);
    const WeightedParticleBelief prior = env->initial_belief(rng, 200);
    const Vec2 obs{1.0, 1.0};
    const WeightedParticleBelief post = filter_update(*env, prior, 0, obs, 200, rng);
    CHECK(post.count() == 200);
    for (std::size_t i = 0; i < post.count(); ++i) {
        const Particle& p = post.particle(i);
        CHECK(p.prior_weight == doctest::Approx(1.0));
        CHECK(p.weight ==
              doctest::Approx(env->observation_density(obs, 0, p.state)).epsilon(1e-12));
    }
}
