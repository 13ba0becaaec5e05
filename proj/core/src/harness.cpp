#include "rhoplan/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "rhoplan/entropy.hpp"
#include "rhoplan/pft_dpw.hpp"
#include "rhoplan/pomcpow.hpp"

namespace rhoplan {

namespace {

using nlohmann::json;

constexpr std::uint64_t kEnvStream = 11;
constexpr std::uint64_t kFilterStream = 13;
constexpr std::uint64_t kPlanStream = 17;

const std::vector<std::string> kPlannerIds = {"rhopomcpow", "pomcpow", "pft_dpw"};

// Benchmark-tuned defaults per planner id (exploration constant, observation
// widening, particle count).
PlannerConfig default_planner_config(const std::string& id) {
    PlannerConfig cfg;
    cfg.max_depth = 20;
    cfg.strategy = SelectionKind::Dpw;
    cfg.dpw.k_a = 100.0;
    cfg.dpw.alpha_a = 0.5;
    if (id == "rhopomcpow") {
        cfg.dpw.c = 120.0;
        cfg.dpw.k_o = 6.0;
        cfg.dpw.alpha_o = 1.0 / 30.0;
    } else if (id == "pomcpow") {
        cfg.dpw.c = 100.0;
        cfg.dpw.k_o = 4.0;
        cfg.dpw.alpha_o = 1.0 / 30.0;
    } else if (id == "pft_dpw") {
        cfg.dpw.c = 80.0;
        cfg.dpw.k_o = 3.0;
        cfg.dpw.alpha_o = 1.0 / 40.0;
        cfg.pft_particle_count = 50;
    } else {
        throw std::invalid_argument("unknown planner id: " + id);
    }
    return cfg;
}

void apply_planner_params(PlannerConfig& cfg, const json& p) {
    if (p.contains("max_depth")) cfg.max_depth = p.at("max_depth").get<int>();
    if (p.contains("strategy")) {
        const std::string s = p.at("strategy").get<std::string>();
        if (s == "dpw")
            cfg.strategy = SelectionKind::Dpw;
        else if (s == "auger")
            cfg.strategy = SelectionKind::Auger;
        else
            throw std::invalid_argument("unknown strategy: " + s);
    }
    if (p.contains("c")) cfg.dpw.c = p.at("c").get<double>();
    if (p.contains("k_a")) cfg.dpw.k_a = p.at("k_a").get<double>();
    if (p.contains("alpha_a")) {
        cfg.dpw.alpha_a = p.at("alpha_a").get<double>();
        cfg.auger.alpha_a = cfg.dpw.alpha_a;
    }
    if (p.contains("k_o")) cfg.dpw.k_o = p.at("k_o").get<double>();
    if (p.contains("alpha_o")) {
        cfg.dpw.alpha_o = p.at("alpha_o").get<double>();
        cfg.auger.alpha_o = cfg.dpw.alpha_o;
    }
    if (p.contains("e")) cfg.auger.e_const = p.at("e").get<double>();
    if (p.contains("incremental")) cfg.incremental_rewards = p.at("incremental").get<bool>();
    if (p.contains("init_particles"))
        cfg.belief_node_init_particles = p.at("init_particles").get<int>();
    if (p.contains("m")) cfg.pft_particle_count = p.at("m").get<int>();
}

json planner_params_json(const PlannerConfig& cfg) {
    json p;
    p["max_depth"] = cfg.max_depth;
    p["strategy"] = cfg.strategy == SelectionKind::Dpw ? "dpw" : "auger";
    p["c"] = cfg.dpw.c;
    p["k_a"] = cfg.dpw.k_a;
    p["alpha_a"] = cfg.dpw.alpha_a;
    p["k_o"] = cfg.dpw.k_o;
    p["alpha_o"] = cfg.dpw.alpha_o;
    p["e"] = cfg.auger.e_const;
    p["incremental"] = cfg.incremental_rewards;
    p["init_particles"] = cfg.belief_node_init_particles;
    p["m"] = cfg.pft_particle_count;
    return p;
}

std::string default_report_metric(const std::string& problem) {
    return problem == "lightdark2d" ? "state_return" : "shaped_return";
}

json budget_to_json(const Budget& b) {
    if (b.kind == Budget::Kind::Iterations)
        return json{{"iterations", static_cast<std::int64_t>(b.value)}};
    return json{{"seconds", b.value}};
}

Budget budget_from_json(const json& j) {
    Budget b;
    if (j.contains("iterations")) {
        b.kind = Budget::Kind::Iterations;
        b.value = j.at("iterations").get<double>();
    } else if (j.contains("seconds")) {
        b.kind = Budget::Kind::Seconds;
        b.value = j.at("seconds").get<double>();
    } else {
        throw std::invalid_argument("budget must specify iterations or seconds");
    }
    return b;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string Budget::label() const {
    if (kind == Kind::Iterations) return "iters:" + std::to_string(static_cast<long long>(value));
    return "secs:" + format_double(value);
}

void Budget::apply(PlannerConfig& cfg) const {
    if (kind == Kind::Iterations) {
        cfg.iteration_budget = static_cast<std::int64_t>(value);
        cfg.time_budget_seconds = -1.0;
    } else {
        cfg.iteration_budget = -1;
        cfg.time_budget_seconds = value;
    }
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    const json j = json::parse(text);
    ExperimentConfig c;
    c.problem = j.value("problem", std::string("lightdark2d"));

    if (j.contains("map"))
        c.map = MapConfig::from_json_text(j.at("map").dump());
    else if (j.contains("map_file"))
        c.map = MapConfig::from_json_file(j.at("map_file").get<std::string>());
    else if (c.problem == "lightdark2d")
        c.map = LightDark2D::default_map();
    else if (c.problem == "active_localization")
        c.map = ActiveLocalization::default_map();
    else if (c.problem == "active_localization_noobs")
        c.map = ActiveLocalization::default_map_no_obstacles();
    else
        throw std::invalid_argument("unknown problem id: " + c.problem);

    if (j.contains("planners"))
        for (const auto& p : j.at("planners")) c.planners.push_back(p.get<std::string>());
    else
        c.planners = {"rhopomcpow"};

    for (const std::string& id : c.planners) {
        PlannerConfig cfg = default_planner_config(id);
        if (j.contains("planner_params")) apply_planner_params(cfg, j.at("planner_params"));
        if (j.contains("per_planner_params") && j.at("per_planner_params").contains(id))
            apply_planner_params(cfg, j.at("per_planner_params").at(id));
        c.planner_configs.push_back(std::move(cfg));
    }

    if (!j.contains("budgets")) throw std::invalid_argument("config: budgets are required");
    for (const auto& b : j.at("budgets")) c.budgets.push_back(budget_from_json(b));

    c.episodes = j.value("episodes", 100);
    c.master_seed = j.value("seed", static_cast<std::uint64_t>(1));
    c.threads = j.value("threads", 1);
    c.root_particles = j.value("root_particles", 500);
    c.report_metric = j.value("report_metric", default_report_metric(c.problem));
    c.output_dir = j.value("output_dir", std::string("out"));
    c.validate_or_throw();
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
    json j;
    j["problem"] = problem;
    j["map"] = json::parse(map.to_json_text());
    j["planners"] = planners;
    json per;
    for (std::size_t i = 0; i < planners.size(); ++i)
        per[planners[i]] = planner_params_json(planner_configs[i]);
    j["per_planner_params"] = per;
    j["budgets"] = json::array();
    for (const Budget& b : budgets) j["budgets"].push_back(budget_to_json(b));
    j["episodes"] = episodes;
    j["seed"] = master_seed;
    j["threads"] = threads;
    j["root_particles"] = root_particles;
    j["report_metric"] = report_metric;
    j["output_dir"] = output_dir;
    return j.dump(2);
}

void ExperimentConfig::validate_or_throw() const {
    if (episodes < 1) throw std::invalid_argument("config: episodes must be >= 1");
    if (budgets.empty()) throw std::invalid_argument("config: budgets must be non-empty");
    if (planners.empty()) throw std::invalid_argument("config: planners must be non-empty");
    if (planners.size() != planner_configs.size())
        throw std::invalid_argument("config: planner config mismatch");
    for (const std::string& id : planners) {
        bool known = false;
        for (const std::string& k : kPlannerIds) known = known || k == id;
        if (!known) throw std::invalid_argument("unknown planner id: " + id);
    }
    if (report_metric != "state_return" && report_metric != "shaped_return")
        throw std::invalid_argument("config: unknown report_metric " + report_metric);
    if (root_particles < 1) throw std::invalid_argument("config: root_particles must be >= 1");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    make_benchmark(problem, map);  // throws on unknown problem
    for (const PlannerConfig& cfg : planner_configs) {
        PlannerConfig with_budget = cfg;
        budgets.front().apply(with_budget);
        validate(with_budget);
    }
}

PlanResult plan_with(const std::string& planner_id, const ProblemModel& model,
                     const PlannerConfig& cfg, const WeightedParticleBelief& root_belief,
                     double root_entropy, Rng& rng) {
    if (planner_id == "rhopomcpow")
        return RhoPomcpowPlanner(model, cfg).plan(root_belief, root_entropy, rng);
    if (planner_id == "pomcpow")
        return PomcpowPlanner(model, cfg).plan(root_belief, root_entropy, rng);
    if (planner_id == "pft_dpw")
        return PftDpwPlanner(model, cfg).plan(root_belief, root_entropy, rng);
    throw std::invalid_argument("unknown planner id: " + planner_id);
}

WeightedParticleBelief filter_update(const ProblemModel& model,
                                     const WeightedParticleBelief& belief, int action, Vec2 obs,
                                     int n_particles, Rng& rng) {
    WeightedParticleBelief out;
    for (int j = 0; j < n_particles; ++j) {
        const Vec2 s =
            belief.particle(static_cast<std::size_t>(belief.sample_index(rng))).state;
        const Vec2 s_next = model.transition_sample(s, action, rng);
        out.insert(s_next, model.observation_density(obs, action, s_next), s, 1.0);
    }
    return out;
}

namespace {

RunRecord run_episode(const BeaconWorld& env, const std::string& planner_id,
                      PlannerConfig cfg, int episode, std::uint64_t episode_seed,
                      int root_particles) {
    using clock = std::chrono::steady_clock;
    RunRecord rec;
    rec.episode = episode;
    rec.seed = episode_seed;

    Rng env_rng(derive_seed(episode_seed, kEnvStream));
    Rng filter_rng(derive_seed(episode_seed, kFilterStream));

    WeightedParticleBelief belief = env.initial_belief(filter_rng, root_particles);
    Vec2 s = gaussian_sample(env.map().x0, BeaconWorld::initial_cov(), env_rng);
    double h_belief = env.initial_belief_entropy();
    rec.initial_entropy = h_belief;
    rec.terminal_entropy = h_belief;

    const double lambda = env.shaping_weight();
    const double gamma = env.discount();
    double disc = 1.0;

    for (int step = 0; step < env.map().step_cap; ++step) {
        Rng plan_rng(derive_seed(episode_seed, kPlanStream, static_cast<std::uint64_t>(step)));
        const auto t0 = clock::now();
        const PlanResult plan = plan_with(planner_id, env, cfg, belief, h_belief, plan_rng);
        rec.plan_seconds.push_back(std::chrono::duration<double>(clock::now() - t0).count());

        const StepResult sr = env.step(s, plan.action, env_rng);
        belief = filter_update(env, belief, plan.action, sr.observation, root_particles,
                               filter_rng);
        const double h_new = boers_batch(belief, plan.action, sr.observation, env);

        rec.state_return += disc * sr.reward;
        rec.shaped_return += disc * (sr.reward + lambda * info_gain(h_belief, h_new));
        disc *= gamma;
        s = sr.next_state;
        h_belief = h_new;
        rec.terminal_entropy = h_new;
        rec.steps += 1;
        if (sr.terminal) break;
    }
    return rec;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate_or_throw();
    const auto env = make_benchmark(config.problem, config.map);

    ExperimentResult result;
    result.config = config;
    result.records.assign(config.planners.size(), {});
    for (auto& per_budget : result.records)
        per_budget.assign(config.budgets.size(), std::vector<RunRecord>(config.episodes));

    struct Job {
        std::size_t p, b;
        int e;
    };
    std::vector<Job> jobs;
    for (std::size_t p = 0; p < config.planners.size(); ++p)
        for (std::size_t b = 0; b < config.budgets.size(); ++b)
            for (int e = 0; e < config.episodes; ++e) jobs.push_back({p, b, e});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job job = jobs[i];
            PlannerConfig cfg = config.planner_configs[job.p];
            config.budgets[job.b].apply(cfg);
            const std::uint64_t seed =
                derive_seed(config.master_seed, job.p, job.b, static_cast<std::uint64_t>(job.e));
            result.records[job.p][job.b][static_cast<std::size_t>(job.e)] = run_episode(
                *env, config.planners[job.p], cfg, job.e, seed, config.root_particles);
        }
    };

    const int n_threads = std::min<int>(config.threads, static_cast<int>(jobs.size()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    // Summary rows in declaration order; accumulation is sequential over
    // episode index, so it is independent of scheduling.
    for (std::size_t p = 0; p < config.planners.size(); ++p) {
        for (std::size_t b = 0; b < config.budgets.size(); ++b) {
            const auto& recs = result.records[p][b];
            double mean = 0.0;
            for (const RunRecord& r : recs)
                mean += config.report_metric == "state_return" ? r.state_return
                                                               : r.shaped_return;
            mean /= static_cast<double>(recs.size());
            double ss = 0.0;
            for (const RunRecord& r : recs) {
                const double x = config.report_metric == "state_return" ? r.state_return
                                                                        : r.shaped_return;
                ss += (x - mean) * (x - mean);
            }
            const int n = static_cast<int>(recs.size());
            const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
            result.summary.push_back({config.planners[p], config.budgets[b].label(), mean,
                                      sd / std::sqrt(static_cast<double>(n)), n});
        }
    }
    return result;
}

void emit_reports(const ExperimentResult& result, const std::string& dir) {
    bool any = false;
    for (const auto& per_budget : result.records)
        for (const auto& recs : per_budget) any = any || !recs.empty();
    if (!any) throw std::invalid_argument("emit_reports: no records");

    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto open = [&dir](const std::string& name) {
        std::ofstream out(dir + "/" + name, std::ios::binary);
        if (!out) throw std::runtime_error("emit_reports: cannot write " + dir + "/" + name);
        return out;
    };

    {
        std::ofstream out = open("summary.csv");
        out << "planner,budget,mean,stderr,n\n";
        for (const SummaryRow& row : result.summary)
            out << row.planner << "," << row.budget << "," << format_double(row.mean) << ","
                << format_double(row.stderr_) << "," << row.n << "\n";
    }
    {
        std::ofstream out = open("records.csv");
        out << "planner,budget,episode,seed,steps,state_return,shaped_return,"
               "initial_entropy,terminal_entropy,total_plan_seconds\n";
        const ExperimentConfig& c = result.config;
        for (std::size_t p = 0; p < c.planners.size(); ++p) {
            for (std::size_t b = 0; b < c.budgets.size(); ++b) {
                for (const RunRecord& r : result.records[p][b]) {
                    double total = 0.0;
                    for (double v : r.plan_seconds) total += v;
                    out << c.planners[p] << "," << c.budgets[b].label() << "," << r.episode
                        << "," << r.seed << "," << r.steps << ","
                        << format_double(r.state_return) << ","
                        << format_double(r.shaped_return) << ","
                        << format_double(r.initial_entropy) << ","
                        << format_double(r.terminal_entropy) << "," << format_double(total)
                        << "\n";
                }
            }
        }
    }
    {
        std::ofstream out = open("manifest.json");
        json manifest;
        manifest["schema_version"] = 1;
        manifest["config"] = json::parse(result.config.to_json_text());
        json seeds = json::object();
        const ExperimentConfig& c = result.config;
        for (std::size_t p = 0; p < c.planners.size(); ++p) {
            for (std::size_t b = 0; b < c.budgets.size(); ++b) {
                json list = json::array();
                for (const RunRecord& r : result.records[p][b]) list.push_back(r.seed);
                seeds[c.planners[p] + "/" + c.budgets[b].label()] = list;
            }
        }
        manifest["episode_seeds"] = seeds;
        out << manifest.dump(2) << "\n";
    }
}

ExperimentResult run_from_manifest(const std::string& manifest_path,
                                   const std::string& output_dir_override) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("replay: cannot open " + manifest_path);
    json manifest;
    in >> manifest;
    ExperimentConfig config = ExperimentConfig::from_json_text(manifest.at("config").dump());
    if (!output_dir_override.empty()) config.output_dir = output_dir_override;
    ExperimentResult result = run_experiment(config);
    emit_reports(result, config.output_dir);
    return result;
}

}  // namespace rhoplan
