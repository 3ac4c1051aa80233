#include "plcnet/topology.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace plcnet::topology {

NetworkTree NetworkTree::from_parents(std::span<const NodeIndex> parents) {
    const std::size_t total = parents.size() + 1;
    NetworkTree t;
    t.nodes_.resize(total);
    t.parent_.assign(total, kCco);
    t.depth_.assign(total, 0);
    t.children_.assign(total, {});
    for (std::size_t i = 0; i < total; ++i) t.nodes_[i].id = static_cast<std::uint32_t>(i);
    t.nodes_[kCco].role = Role::CCO;

    for (std::size_t i = 1; i < total; ++i) {
        const NodeIndex p = parents[i - 1];
        if (p >= total || p == i) throw std::invalid_argument("tree: invalid parent link");
        t.parent_[i] = p;
        t.children_[p].push_back(static_cast<NodeIndex>(i));
    }

    // Depths by BFS from the CCO; anything unreached sits on a cycle.
    std::vector<bool> seen(total, false);
    std::deque<NodeIndex> queue{kCco};
    seen[kCco] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const NodeIndex u = queue.front();
        queue.pop_front();
        for (NodeIndex c : t.children_[u]) {
            seen[c] = true;
            ++reached;
            t.depth_[c] = t.depth_[u] + 1;
            if (t.depth_[c] > t.layers_.size()) t.layers_.emplace_back();
            t.layers_[t.depth_[c] - 1].push_back(c);
            queue.push_back(c);
        }
    }
    if (reached != total) throw std::invalid_argument("tree: parent links contain a cycle");

    for (std::size_t i = 1; i < total; ++i) t.nodes_[i].role = t.children_[i].empty() ? Role::STA : Role::PCO;
    return t;
}

std::vector<NodeIndex> NetworkTree::coordinators_bfs() const {
    std::vector<NodeIndex> out{kCco};
    for (const auto& layer : layers_) {
        for (NodeIndex i : layer) {
            if (!children_[i].empty()) out.push_back(i);
        }
    }
    return out;
}

std::string NetworkTree::check(std::uint32_t max_layers) const {
    if (nodes_.empty()) return "tree has no CCO";
    if (nodes_[kCco].role != Role::CCO) return "node 0 is not the CCO";
    std::size_t in_layers = 0;
    for (std::size_t d = 0; d < layers_.size(); ++d) {
        if (layers_[d].empty()) return "empty layer " + std::to_string(d + 1);
        in_layers += layers_[d].size();
    }
    if (in_layers != sta_count()) return "layers do not cover every station";
    for (NodeIndex i = 1; i < nodes_.size(); ++i) {
        if (nodes_[i].role == Role::CCO) return "more than one CCO";
        if (depth_[i] != depth_[parent_[i]] + 1) return "depth mismatch at node " + std::to_string(i);
    }
    if (max_depth() > max_layers) return "tree deeper than max_layers";
    if (sta_count() > 0 && layers_.front().size() < min_first_layer(sta_count(), max_layers)) {
        return "first layer smaller than the required minimum";
    }
    return {};
}

std::string NetworkTree::edge_list() const {
    std::ostringstream out;
    for (NodeIndex i = 1; i < nodes_.size(); ++i) out << i << ' ' << parent_[i] << ' ' << depth_[i] << '\n';
    return out.str();
}

std::uint32_t min_first_layer(std::uint32_t n, std::uint32_t max_layers) {
    if (max_layers == 0) throw std::invalid_argument("max_layers must be positive");
    std::uint32_t m = 1;
    for (;; ++m) {
        unsigned __int128 power = 1;
        for (std::uint32_t k = 0; k < max_layers && power < n; ++k) power *= m;
        if (power >= n) return m;
    }
}

NetworkTree generate_tree(std::uint32_t n, std::uint32_t max_layers, std::mt19937_64& rng) {
    if (n == 0 || max_layers == 0) throw std::invalid_argument("generate_tree: n and max_layers must be positive");

    const auto target_depth = std::uniform_int_distribution<std::uint32_t>(1, max_layers)(rng);
    if (target_depth == 1) return single_layer(n);

    const std::uint32_t min_first = std::min(min_first_layer(n, max_layers), n);
    const auto first = std::uniform_int_distribution<std::uint32_t>(min_first, n)(rng);

    std::vector<NodeIndex> parents(n, kCco);
    std::vector<std::uint32_t> depth(n + 1, 0);
    // Stations shallow enough to take another child.
    std::vector<NodeIndex> open;
    open.reserve(n);
    for (NodeIndex i = 1; i <= first; ++i) {
        depth[i] = 1;
        open.push_back(i);
    }
    for (NodeIndex i = first + 1; i <= n; ++i) {
        const NodeIndex p = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
        parents[i - 1] = p;
        depth[i] = depth[p] + 1;
        if (depth[i] < target_depth) open.push_back(i);
    }
    return NetworkTree::from_parents(parents);
}

NetworkTree single_layer(std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("single_layer: n must be positive");
    const std::vector<NodeIndex> parents(n, kCco);
    return NetworkTree::from_parents(parents);
}

}  // namespace plcnet::topology
