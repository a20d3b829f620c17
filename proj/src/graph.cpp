#include "relab/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "relab/errors.hpp"

namespace relab {

Graph::Graph(std::vector<NodeId> nodes, const std::vector<Edge>& edges) {
    if (nodes.empty()) throw InvalidParams("graph must have at least one node");
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (nodes[i] == nodes[i + 1])
            throw DuplicateNode("duplicate node ID " + std::to_string(nodes[i]));
    if (nodes.front() == 0) throw InvalidParams("node IDs must be positive");
    ids_ = std::move(nodes);
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = static_cast<int>(i);

    adj_.assign(ids_.size(), {});
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : edges) {
        auto iu = index_.find(u);
        auto iv = index_.find(v);
        if (iu == index_.end())
            throw UnknownNode("edge endpoint " + std::to_string(u) + " not in node set");
        if (iv == index_.end())
            throw UnknownNode("edge endpoint " + std::to_string(v) + " not in node set");
        if (u == v) throw SelfLoop("self-loop at node " + std::to_string(u));
        int a = iu->second, b = iv->second;
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) continue; // ignore duplicate edge lines
        adj_[static_cast<std::size_t>(a)].push_back(b);
        adj_[static_cast<std::size_t>(b)].push_back(a);
        ++edge_count_;
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());

    // connectivity check
    std::vector<char> visited(ids_.size(), 0);
    std::queue<int> q;
    q.push(0);
    visited[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : adj_[static_cast<std::size_t>(x)])
            if (!visited[static_cast<std::size_t>(y)]) {
                visited[static_cast<std::size_t>(y)] = 1;
                ++reached;
                q.push(y);
            }
    }
    if (reached != ids_.size()) throw DisconnectedGraph("graph is not connected");
}

std::vector<NodeId> Graph::neighbors(NodeId id) const {
    int idx = index_of(id);
    std::vector<NodeId> out;
    out.reserve(adj_[static_cast<std::size_t>(idx)].size());
    for (int j : adj_[static_cast<std::size_t>(idx)]) out.push_back(ids_[static_cast<std::size_t>(j)]);
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (std::size_t i = 0; i < adj_.size(); ++i)
        for (int j : adj_[i])
            if (static_cast<int>(i) < j) out.push_back({ids_[i], ids_[static_cast<std::size_t>(j)]});
    std::sort(out.begin(), out.end());
    return out;
}

int Graph::index_of(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownNode("unknown node " + std::to_string(id));
    return it->second;
}

Graph build_graph(int n, const std::vector<Edge>& edges) {
    if (n < 1) throw InvalidParams("node count must be >= 1");
    for (const auto& [u, v] : edges)
        if (u < 1 || v < 1 || u > static_cast<NodeId>(n) || v > static_cast<NodeId>(n))
            throw UnknownNode("edge endpoint out of range 1.." + std::to_string(n));
    std::vector<NodeId> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = static_cast<NodeId>(i + 1);
    return Graph(std::move(nodes), edges);
}

DistanceMap bfs_distances(const Graph& g, NodeId source) {
    DistanceMap dm;
    dm.source = source;
    dm.dist.assign(static_cast<std::size_t>(g.node_count()), -1);
    int s = g.index_of(source);
    std::queue<int> q;
    dm.dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : g.adj(x))
            if (dm.dist[static_cast<std::size_t>(y)] < 0) {
                dm.dist[static_cast<std::size_t>(y)] = dm.dist[static_cast<std::size_t>(x)] + 1;
                q.push(y);
            }
    }
    return dm;
}

std::vector<NodeId> ball(const Graph& g, NodeId v, int t) {
    if (t < 0) throw InvalidParams("ball radius must be >= 0");
    DistanceMap dm = bfs_distances(g, v);
    std::vector<NodeId> out;
    for (int i = 0; i < g.node_count(); ++i)
        if (dm.dist[static_cast<std::size_t>(i)] >= 0 && dm.dist[static_cast<std::size_t>(i)] <= t)
            out.push_back(g.id_at(i));
    return out; // ids() order is sorted already
}

std::vector<NodeId> shortest_path(const Graph& g, NodeId u, NodeId v) {
    DistanceMap from_u = bfs_distances(g, u);
    int vi = g.index_of(v);
    std::vector<NodeId> path;
    path.push_back(v);
    int cur = vi;
    while (g.id_at(cur) != u) {
        int d = from_u.dist[static_cast<std::size_t>(cur)];
        int best = -1;
        for (int w : g.adj(cur)) {
            if (from_u.dist[static_cast<std::size_t>(w)] == d - 1) {
                best = w; // adj is sorted by ID, first hit is the smallest
                break;
            }
        }
        cur = best;
        path.push_back(g.id_at(cur));
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> multi_source_distances(const Graph& g, const std::vector<NodeId>& sources) {
    std::vector<int> dist(static_cast<std::size_t>(g.node_count()), -1);
    std::queue<int> q;
    for (NodeId s : sources) {
        int i = g.index_of(s);
        if (dist[static_cast<std::size_t>(i)] != 0) {
            dist[static_cast<std::size_t>(i)] = 0;
            q.push(i);
        }
    }
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : g.adj(x))
            if (dist[static_cast<std::size_t>(y)] < 0) {
                dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                q.push(y);
            }
    }
    return dist;
}

} // namespace relab
