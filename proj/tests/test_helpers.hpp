#ifndef RELAB_TESTS_HELPERS_HPP
#define RELAB_TESTS_HELPERS_HPP

// Test-side oracles, written independently of the library's算法 paths so
// they can act as cross-checks. Only the Graph container is shared.

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "relab/graph.hpp"

namespace testref {

using relab::Graph;
using relab::NodeId;

/// Plain all-pairs BFS distance table, keyed by node ID.
inline std::map<NodeId, std::map<NodeId, int>> all_pairs(const Graph& g) {
    std::map<NodeId, std::map<NodeId, int>> table;
    for (NodeId s : g.ids()) {
        std::map<NodeId, int>& dist = table[s];
        std::queue<NodeId> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            NodeId x = q.front();
            q.pop();
            for (NodeId y : g.neighbors(x))
                if (!dist.count(y)) {
                    dist[y] = dist[x] + 1;
                    q.push(y);
                }
        }
    }
    return table;
}

/// Independent greedy ruling-set construction: scan IDs ascending, add a
/// node unless a chosen one is within 2f+1, per the exclusion simulation.
inline std::set<NodeId> greedy_members_ref(const Graph& g, int f,
                                           const std::map<NodeId, std::map<NodeId, int>>& ap) {
    std::set<NodeId> members;
    std::vector<NodeId> ids = g.ids();
    std::sort(ids.begin(), ids.end());
    for (NodeId v : ids) {
        bool excluded = false;
        for (NodeId m : members)
            if (ap.at(m).at(v) <= 2 * f + 1) excluded = true;
        if (!excluded) members.insert(v);
    }
    return members;
}

/// Definition-level alternative-node predicate over a distance table.
inline bool is_alternative_ref(const Graph& g, NodeId v, NodeId u, int f,
                               const std::map<NodeId, std::map<NodeId, int>>& ap) {
    if (ap.at(v).at(u) > f) return false;
    int differing = 0;
    for (NodeId q : g.ids()) {
        int dv = ap.at(v).at(q);
        int du = ap.at(u).at(q);
        if ((dv <= f + 1 || du <= f + 1) && dv != du) ++differing;
    }
    return differing <= f - 2;
}

/// All connected labeled graphs on n nodes (IDs 1..n), as edge lists.
inline std::vector<std::vector<relab::Edge>> connected_graphs(int n) {
    std::vector<relab::Edge> all_edges;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            all_edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    std::vector<std::vector<relab::Edge>> out;
    const int m = static_cast<int>(all_edges.size());
    for (long long mask = 0; mask < (1LL << m); ++mask) {
        std::vector<relab::Edge> edges;
        for (int b = 0; b < m; ++b)
            if (mask & (1LL << b)) edges.push_back(all_edges[static_cast<std::size_t>(b)]);
        // connectivity over 1..n
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + 1));
        for (auto& [u, v] : edges) {
            adj[u].push_back(static_cast<int>(v));
            adj[v].push_back(static_cast<int>(u));
        }
        std::vector<char> vis(static_cast<std::size_t>(n + 1), 0);
        std::queue<int> q;
        q.push(1);
        vis[1] = 1;
        int reached = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[static_cast<std::size_t>(x)])
                if (!vis[static_cast<std::size_t>(y)]) {
                    vis[static_cast<std::size_t>(y)] = 1;
                    ++reached;
                    q.push(y);
                }
        }
        if (reached == n) out.push_back(std::move(edges));
    }
    return out;
}

/// All k-subsets of `ids`.
inline std::vector<std::vector<NodeId>> subsets_of_size(const std::vector<NodeId>& ids, int k) {
    std::vector<std::vector<NodeId>> out;
    std::vector<int> pick(static_cast<std::size_t>(k));
    const int n = static_cast<int>(ids.size());
    if (k > n) return out;
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        std::vector<NodeId> s;
        for (int i : pick) s.push_back(ids[static_cast<std::size_t>(i)]);
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

} // namespace testref

#endif
