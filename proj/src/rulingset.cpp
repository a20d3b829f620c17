#include "relab/rulingset.hpp"

#include <algorithm>
#include <queue>

#include "relab/errors.hpp"

namespace relab {

bool RulingSet::contains(const Graph& g, NodeId v) const {
    (void)g.index_of(v); // validate
    return std::binary_search(members.begin(), members.end(), v);
}

RulingSet greedy_ruling_set(const Graph& g, int f) {
    if (f < 1) throw InvalidParams("greedy_ruling_set: f must be >= 1");
    if (g.node_count() < f + 1)
        throw GraphTooSmall("greedy_ruling_set: need n >= f+1");
    const int radius = 2 * f + 1;
    const int n = g.node_count();
    std::vector<char> excluded(static_cast<std::size_t>(n), 0);
    RulingSet rs;
    rs.f = f;
    // ids() is sorted, so dense index order is increasing-ID order.
    std::vector<int> depth(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (excluded[static_cast<std::size_t>(i)]) continue;
        rs.members.push_back(g.id_at(i));
        // exclude the radius-(2f+1) ball around i with a bounded BFS
        std::fill(depth.begin(), depth.end(), -1);
        std::queue<int> q;
        depth[static_cast<std::size_t>(i)] = 0;
        excluded[static_cast<std::size_t>(i)] = 1;
        q.push(i);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            if (depth[static_cast<std::size_t>(x)] == radius) continue;
            for (int y : g.adj(x))
                if (depth[static_cast<std::size_t>(y)] < 0) {
                    depth[static_cast<std::size_t>(y)] = depth[static_cast<std::size_t>(x)] + 1;
                    excluded[static_cast<std::size_t>(y)] = 1;
                    q.push(y);
                }
        }
    }
    rs.dist_to_s = multi_source_distances(g, rs.members);
    return rs;
}

VerifyReport verify_ruling_set(const Graph& g, const RulingSet& rs) {
    VerifyReport report;
    const int n = g.node_count();
    const int f = rs.f;
    if (f < 1) {
        report.fail("params", "f must be >= 1");
        return report;
    }
    if (rs.dist_to_s.size() != static_cast<std::size_t>(n)) {
        report.fail("shape", "dist_to_s size does not match graph");
        return report;
    }
    if (rs.members.empty()) {
        report.fail("domination", "empty ruling set dominates nothing");
        return report;
    }
    // separation
    for (NodeId m : rs.members) {
        DistanceMap dm = bfs_distances(g, m);
        for (NodeId other : rs.members) {
            if (other <= m) continue;
            int d = dm.at(g, other);
            if (d < 2 * f + 2) {
                report.fail("separation", "members " + std::to_string(m) + " and " +
                                              std::to_string(other) + " at distance " + std::to_string(d) +
                                              " < " + std::to_string(2 * f + 2));
            }
        }
    }
    // domination + exact distances + membership consistency
    std::vector<int> exact = multi_source_distances(g, rs.members);
    for (int i = 0; i < n; ++i) {
        NodeId id = g.id_at(i);
        if (exact[static_cast<std::size_t>(i)] > 2 * f + 1)
            report.fail("domination", "node " + std::to_string(id) + " at distance " +
                                          std::to_string(exact[static_cast<std::size_t>(i)]) + " from S");
        if (rs.dist_to_s[static_cast<std::size_t>(i)] != exact[static_cast<std::size_t>(i)])
            report.fail("dist_to_s", "node " + std::to_string(id) + " stores " +
                                         std::to_string(rs.dist_to_s[static_cast<std::size_t>(i)]) +
                                         ", exact is " + std::to_string(exact[static_cast<std::size_t>(i)]));
        bool member = std::binary_search(rs.members.begin(), rs.members.end(), id);
        if (member != (exact[static_cast<std::size_t>(i)] == 0))
            report.fail("membership", "node " + std::to_string(id) + " membership bit inconsistent");
    }
    return report;
}

bool is_alternative(const Graph& g, NodeId v, NodeId u, int f) {
    if (u == v) throw InvalidParams("is_alternative: u and v must differ");
    DistanceMap dv = bfs_distances(g, v);
    DistanceMap du = bfs_distances(g, u);
    if (dv.at(g, u) > f) return false;
    int differing = 0;
    for (int i = 0; i < g.node_count(); ++i) {
        int a = dv.dist[static_cast<std::size_t>(i)];
        int b = du.dist[static_cast<std::size_t>(i)];
        bool in_union = (a >= 0 && a <= f + 1) || (b >= 0 && b <= f + 1);
        if (in_union && a != b) ++differing;
    }
    return differing <= f - 2;
}

bool check_lemma_greedy(const Graph& g, const RulingSet& rs, int f) {
    for (NodeId v : rs.members) {
        for (NodeId u : g.ids()) {
            if (u >= v) break; // ids() sorted; only ID(u) < ID(v) matters
            if (std::binary_search(rs.members.begin(), rs.members.end(), u)) continue;
            if (is_alternative(g, v, u, f)) return false;
        }
    }
    return true;
}

} // namespace relab
