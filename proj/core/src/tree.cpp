#include "rhoplan/tree.hpp"

#include <json.hpp>

namespace rhoplan {

std::int32_t BeliefTree::make_root(WeightedParticleBelief belief, double entropy) {
    BeliefNode root;
    root.id = static_cast<std::int32_t>(nodes_.size());
    root.belief = std::move(belief);
    root.entropy = entropy;
    nodes_.push_back(std::move(root));
    return nodes_.back().id;
}

std::int32_t BeliefTree::add_action_child(std::int32_t h, int action) {
    ActionNode a;
    a.id = static_cast<std::int32_t>(actions_.size());
    a.parent = h;
    a.action = action;
    a.creation_index = static_cast<std::int32_t>(nodes_[h].children.size()) + 1;
    nodes_[h].children.push_back(a.id);
    actions_.push_back(std::move(a));
    return actions_.back().id;
}

std::int32_t BeliefTree::add_belief_child(std::int32_t ha, Vec2 obs, bool terminal) {
    BeliefNode n;
    n.id = static_cast<std::int32_t>(nodes_.size());
    n.parent_action = ha;
    n.creation_index = static_cast<std::int32_t>(actions_[ha].branches.size()) + 1;
    n.depth = nodes_[actions_[ha].parent].depth + 1;
    n.obs = obs;
    n.terminal = terminal;
    nodes_.push_back(std::move(n));
    actions_[ha].branches.push_back(ObsBranch{nodes_.back().id, 0, 1});
    return nodes_.back().id;
}

std::uint64_t BeliefTree::digest() const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001B3ULL;
    };
    mix(nodes_.size());
    mix(actions_.size());
    for (const BeliefNode& n : nodes_) {
        mix(static_cast<std::uint64_t>(n.parent_action + 1));
        mix(static_cast<std::uint64_t>(n.depth));
        mix(static_cast<std::uint64_t>(n.visits));
        mix(n.belief.count());
        mix(n.terminal ? 1 : 0);
    }
    for (const ActionNode& a : actions_) {
        mix(static_cast<std::uint64_t>(a.parent));
        mix(static_cast<std::uint64_t>(a.action));
        mix(static_cast<std::uint64_t>(a.visits));
        mix(a.branches.size());
        for (const ObsBranch& b : a.branches) {
            mix(static_cast<std::uint64_t>(b.node));
            mix(static_cast<std::uint64_t>(b.visits));
            mix(static_cast<std::uint64_t>(b.gen_count));
        }
    }
    return h;
}

std::string BeliefTree::stats_json() const {
    int max_depth = 0;
    for (const BeliefNode& n : nodes_) max_depth = std::max(max_depth, n.depth);
    std::vector<std::int64_t> depth_hist(static_cast<std::size_t>(max_depth) + 1, 0);
    std::vector<std::int64_t> depth_particles(static_cast<std::size_t>(max_depth) + 1, 0);
    for (const BeliefNode& n : nodes_) {
        depth_hist[static_cast<std::size_t>(n.depth)] += 1;
        depth_particles[static_cast<std::size_t>(n.depth)] +=
            static_cast<std::int64_t>(n.belief.count());
    }
    nlohmann::json j;
    j["node_count"] = nodes_.size();
    j["action_node_count"] = actions_.size();
    j["depth_histogram"] = depth_hist;
    j["per_depth_particle_counts"] = depth_particles;
    return j.dump();
}

double lvu_update_v(BeliefNode& h, const ActionNode& ha, double q_new, double q_prev) {
    const double n_h = static_cast<double>(h.visits);
    const double n_ha = static_cast<double>(ha.visits);
    h.value += (n_ha * q_new - (n_ha - 1.0) * q_prev - h.value) / n_h;
    return h.value;
}

double lvu_update_q(ActionNode& ha, const ObsBranch& branch, double rho_new, double rho_prev,
                    double v_new, double v_prev, double gamma) {
    const double n_ha = static_cast<double>(ha.visits);
    const double n_hao = static_cast<double>(branch.visits);
    ha.q += (n_hao / n_ha) * (rho_new + gamma * v_new) -
            ((n_hao - 1.0) / n_ha) * (rho_prev + gamma * v_prev) - ha.q / n_ha;
    return ha.q;
}

double full_recompute_v(const BeliefTree& tree, std::int32_t h) {
    const BeliefNode& n = tree.node(h);
    double sum = n.rollout_value;
    for (std::int32_t ha : n.children) {
        const ActionNode& a = tree.action(ha);
        sum += static_cast<double>(a.visits) * a.q;
    }
    return sum / static_cast<double>(n.visits);
}

double full_recompute_q(const BeliefTree& tree, std::int32_t ha, double gamma) {
    const ActionNode& a = tree.action(ha);
    double sum = 0.0;
    for (const ObsBranch& b : a.branches) {
        const BeliefNode& child = tree.node(b.node);
        sum += static_cast<double>(b.visits) * (child.rho + gamma * child.value);
    }
    return sum / static_cast<double>(a.visits);
}

}  // namespace rhoplan
