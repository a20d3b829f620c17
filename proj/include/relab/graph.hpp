#ifndef RELAB_GRAPH_HPP
#define RELAB_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace relab {

/// Unique positive node identifier. Zero is never a valid ID.
using NodeId = std::uint32_t;

using Edge = std::pair<NodeId, NodeId>;

/// Undirected connected graph over arbitrary positive node IDs.
///
/// Immutable after construction. Internally nodes are mapped to dense
/// indices in increasing ID order; all public queries speak NodeId.
class Graph {
public:
    /// Builds a graph over an explicit node set. Validates symmetric
    /// adjacency, no self-loops, distinct IDs, and connectivity.
    Graph(std::vector<NodeId> nodes, const std::vector<Edge>& edges);

    int node_count() const { return static_cast<int>(ids_.size()); }
    int edge_count() const { return edge_count_; }

    /// All node IDs in increasing order.
    const std::vector<NodeId>& ids() const { return ids_; }

    bool has_node(NodeId id) const { return index_.count(id) != 0; }

    /// Neighbor IDs of `id`, sorted increasing.
    std::vector<NodeId> neighbors(NodeId id) const;

    /// Sorted list of edges (u < v), suitable for canonical output.
    std::vector<Edge> edges() const;

    // Dense-index access for algorithm internals. Indices are assigned in
    // increasing ID order: id_at(0) < id_at(1) < ...
    int index_of(NodeId id) const;
    NodeId id_at(int idx) const { return ids_[static_cast<std::size_t>(idx)]; }
    const std::vector<int>& adj(int idx) const { return adj_[static_cast<std::size_t>(idx)]; }

private:
    std::vector<NodeId> ids_;                 // sorted increasing
    std::unordered_map<NodeId, int> index_;   // id -> dense index
    std::vector<std::vector<int>> adj_;       // dense, each list sorted
    int edge_count_ = 0;
};

/// Hop distances from a single source.
struct DistanceMap {
    NodeId source = 0;
    std::vector<int> dist; // by dense index

    int at(const Graph& g, NodeId v) const { return dist[static_cast<std::size_t>(g.index_of(v))]; }
};

/// Nodes are 1..n; endpoints must be in range; result must be connected.
Graph build_graph(int n, const std::vector<Edge>& edges);

/// Exact hop distances from `source` by breadth-first search.
DistanceMap bfs_distances(const Graph& g, NodeId source);

/// All nodes within hop distance `t` of `v` (always contains `v`), sorted.
std::vector<NodeId> ball(const Graph& g, NodeId v, int t);

/// A shortest u--v path. Deterministic: walking back from v, each step
/// picks the smallest-ID predecessor.
std::vector<NodeId> shortest_path(const Graph& g, NodeId u, NodeId v);

/// Multi-source BFS distance to the nearest of `sources` (dense-indexed).
std::vector<int> multi_source_distances(const Graph& g, const std::vector<NodeId>& sources);

} // namespace relab

#endif
