#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rhoplan/harness.hpp"
#include "rhoplan/synthetic.hpp"

namespace {

using namespace rhoplan;

int cmd_run(const std::string& config_path, const std::string& manifest_path,
            std::uint64_t seed_override, bool seed_set, const std::string& out_override,
            int threads_override) {
    if (!manifest_path.empty()) {
        const ExperimentResult res = run_from_manifest(manifest_path, out_override);
        std::cout << "replayed " << res.config.planners.size() << " planner(s) x "
                  << res.config.budgets.size() << " budget(s) x " << res.config.episodes
                  << " episode(s) -> " << res.config.output_dir << "\n";
        return 0;
    }
    ExperimentConfig config = ExperimentConfig::from_json_file(config_path);
    if (seed_set) config.master_seed = seed_override;
    if (!out_override.empty()) config.output_dir = out_override;
    if (threads_override > 0) config.threads = threads_override;
    const ExperimentResult res = run_experiment(config);
    emit_reports(res, config.output_dir);
    std::cout << "planner,budget,mean,stderr,n\n";
    for (const SummaryRow& row : res.summary)
        std::cout << row.planner << "," << row.budget << "," << row.mean << "," << row.stderr_
                  << "," << row.n << "\n";
    std::cout << "wrote " << config.output_dir << "/summary.csv\n";
    return 0;
}

int cmd_profile(const std::string& problem, std::int64_t iterations, std::uint64_t seed,
                const std::string& out_dir, int root_particles) {
    const auto env = make_benchmark(problem);
    PlannerConfig base;  // benchmark defaults for the shaped planner
    base.dpw.c = 120.0;
    base.dpw.k_o = 6.0;
    base.dpw.alpha_o = 1.0 / 30.0;

    ProfileResult modes = profile_reward_modes(*env, base, iterations, seed, root_particles);

    PlannerConfig pom = base;
    pom.dpw.c = 100.0;
    pom.dpw.k_o = 4.0;
    ProfileResult upkeep = profile_pomcpow_upkeep(*env, pom, iterations, seed, root_particles);

    std::vector<TimingCurve> curves = modes.curves;
    curves.insert(curves.end(), upkeep.curves.begin(), upkeep.curves.end());
    std::filesystem::create_directories(out_dir);
    write_timings_csv(out_dir + "/timings.csv", curves);

    const std::int64_t lo = std::max<std::int64_t>(10, iterations / 10);
    std::cout << "tree digests match within each pair\n";
    for (const TimingCurve& c : curves)
        std::cout << c.variant << ": loglog slope [" << lo << "," << iterations
                  << "] = " << loglog_slope(c, lo, iterations) << "\n";
    std::cout << "wrote " << out_dir << "/timings.csv\n";
    return 0;
}

int cmd_bounds(const std::string& checkpoints_csv, std::uint64_t seed,
               const std::string& out_dir) {
    std::vector<std::int64_t> checkpoints;
    std::size_t pos = 0;
    while (pos < checkpoints_csv.size()) {
        std::size_t next = checkpoints_csv.find(',', pos);
        if (next == std::string::npos) next = checkpoints_csv.size();
        checkpoints.push_back(std::stoll(checkpoints_csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    ConsistencyParams params;  // alpha_a = alpha_o = 1/2, e = 0.5
    const BoundsResult res = bounds_experiment(checkpoints, params, seed);
    std::filesystem::create_directories(out_dir);
    write_bounds_csv(out_dir + "/bounds.csv", res.rows);
    std::cout << "paths checked: " << res.rows.size() << "\n"
              << "violations: " << res.violations << "\n"
              << "vacuous bounds (<1, flagged): " << res.vacuous_count << "\n"
              << "direct strategy checks: " << res.def1_checks
              << ", violations: " << res.def1_violations << "\n"
              << "wrote " << out_dir << "/bounds.csv\n";
    return res.violations == 0 && res.def1_violations == 0 ? 0 : 1;
}

int cmd_oracle(int shannon_n, int boers_n, int lvu_n, std::uint64_t seed,
               const std::string& out_dir) {
    const auto env = make_benchmark("lightdark2d");
    const SweepResult sh = shannon_sweep(shannon_n, seed);
    const SweepResult bo = boers_sweep(*env, boers_n, 100, seed + 1);
    const SweepResult lv = lvu_sweep(lvu_n, seed + 2);

    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/oracle.csv", std::ios::binary);
    out << "component,steps,max_err,incremental_seconds,batch_seconds,speedup\n";
    auto row = [&out](const char* name, const SweepResult& r) {
        out << name << "," << r.steps << "," << format_double(r.max_err) << ","
            << format_double(r.incremental_seconds) << "," << format_double(r.batch_seconds)
            << ","
            << format_double(r.incremental_seconds > 0 ? r.batch_seconds / r.incremental_seconds
                                                       : 0.0)
            << "\n";
    };
    row("shannon", sh);
    row("boers", bo);
    row("lvu", lv);
    std::cout << "shannon: max |err| = " << sh.max_err << ", speedup x"
              << sh.batch_seconds / sh.incremental_seconds << "\n"
              << "boers:   max rel err = " << bo.max_err << ", speedup x"
              << bo.batch_seconds / bo.incremental_seconds << "\n"
              << "lvu:     max |err| = " << lv.max_err << "\n"
              << "wrote " << out_dir << "/oracle.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous-space belief-reward POMDP planning experiments"};
    app.require_subcommand(1);

    std::string config_path, manifest_path, out_dir;
    std::uint64_t seed = 1;
    int threads = 0;
    bool seed_set = false;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("--config", config_path, "experiment config (JSON)");
    run->add_option("--manifest", manifest_path, "replay a previously written manifest");
    run->add_option("--seed", seed, "override the master seed")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_option("--out", out_dir, "override the output directory");
    run->add_option("--threads", threads, "override the worker thread count");

    std::string problem = "lightdark2d";
    std::int64_t iterations = 10000;
    int root_particles = 500;
    CLI::App* profile = app.add_subcommand("profile", "paired planning-time curves");
    profile->add_option("--problem", problem, "benchmark problem id");
    profile->add_option("--iterations", iterations, "iterations per curve");
    profile->add_option("--seed", seed, "shared seed for the paired runs");
    profile->add_option("--out", out_dir, "output directory")->required();
    profile->add_option("--root-particles", root_particles, "root belief particle count");

    std::string checkpoints = "100,1000,10000";
    CLI::App* bounds = app.add_subcommand("bounds", "visitation lower-bound experiment");
    bounds->add_option("--checkpoints", checkpoints, "comma-separated iteration checkpoints");
    bounds->add_option("--seed", seed, "experiment seed");
    bounds->add_option("--out", out_dir, "output directory")->required();

    int shannon_n = 10000, boers_n = 2000, lvu_n = 100000;
    CLI::App* oracle = app.add_subcommand("oracle", "incremental-vs-batch sweeps");
    oracle->add_option("--shannon-n", shannon_n, "Shannon insertion count");
    oracle->add_option("--boers-n", boers_n, "Boers insertion count");
    oracle->add_option("--lvu-n", lvu_n, "tree update count");
    oracle->add_option("--seed", seed, "sweep seed");
    oracle->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (config_path.empty() && manifest_path.empty())
                throw std::invalid_argument("run: --config or --manifest is required");
            return cmd_run(config_path, manifest_path, seed, seed_set, out_dir, threads);
        }
        if (profile->parsed())
            return cmd_profile(problem, iterations, seed, out_dir, root_particles);
        if (bounds->parsed()) return cmd_bounds(checkpoints, seed, out_dir);
        if (oracle->parsed()) return cmd_oracle(shannon_n, boers_n, lvu_n, seed, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
