#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "plcnet/core.hpp"

namespace plcnet::topology {

/// Index into NetworkTree::nodes. Index 0 is always the CCO; stations are 1..n.
using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kCco = 0;

/// Rooted tree of CCO, proxy coordinators and stations.
class NetworkTree {
public:
    NetworkTree() = default;

    /// Builds a tree from parent links; parents[i] is the parent of station i + 1.
    /// Throws std::invalid_argument if the links do not form a tree rooted at the CCO.
    static NetworkTree from_parents(std::span<const NodeIndex> parents);

    std::uint32_t sta_count() const { return static_cast<std::uint32_t>(nodes_.size()) - 1; }
    const std::vector<NodeId>& nodes() const { return nodes_; }
    NodeIndex parent(NodeIndex i) const { return parent_.at(i); }
    std::uint32_t depth(NodeIndex i) const { return depth_.at(i); }
    const std::vector<NodeIndex>& children(NodeIndex i) const { return children_.at(i); }
    /// layers()[d - 1] holds the stations at depth d.
    const std::vector<std::vector<NodeIndex>>& layers() const { return layers_; }
    std::uint32_t max_depth() const { return static_cast<std::uint32_t>(layers_.size()); }

    /// Coordinators in breadth-first discovery order: the CCO, then every
    /// station that has children.
    std::vector<NodeIndex> coordinators_bfs() const;

    /// Checks every structural invariant; returns an empty string when the tree is valid.
    std::string check(std::uint32_t max_layers) const;

    /// One `child_id parent_id depth` line per station.
    std::string edge_list() const;

private:
    std::vector<NodeId> nodes_;
    std::vector<NodeIndex> parent_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::vector<NodeIndex>> children_;
    std::vector<std::vector<NodeIndex>> layers_;
};

/// Smallest m with m^max_layers >= n, i.e. ceil(n^(1/max_layers)) computed exactly.
std::uint32_t min_first_layer(std::uint32_t n, std::uint32_t max_layers);

NetworkTree generate_tree(std::uint32_t n, std::uint32_t max_layers, std::mt19937_64& rng);

NetworkTree single_layer(std::uint32_t n);

}  // namespace plcnet::topology
