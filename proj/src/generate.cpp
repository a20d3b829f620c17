#include "relab/generate.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "relab/errors.hpp"

namespace relab {

namespace {

std::vector<Edge> path_edges(int n) {
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
    return e;
}

bool edge_set_connected(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : edges) {
        adj[u - 1].push_back(static_cast<int>(v) - 1);
        adj[v - 1].push_back(static_cast<int>(u) - 1);
    }
    std::vector<char> vis(static_cast<std::size_t>(n), 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
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
    return reached == n;
}

} // namespace

std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw InvalidParams("rng_below: bound must be positive");
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

GraphKind graph_kind_from_string(const std::string& s) {
    if (s == "path") return GraphKind::path;
    if (s == "cycle") return GraphKind::cycle;
    if (s == "grid") return GraphKind::grid;
    if (s == "random_tree") return GraphKind::random_tree;
    if (s == "gnp_connected" || s == "gnp") return GraphKind::gnp_connected;
    if (s == "intro_gadget" || s == "gadget") return GraphKind::intro_gadget;
    throw InvalidParams("unknown graph kind: " + s);
}

std::string to_string(GraphKind k) {
    switch (k) {
        case GraphKind::path: return "path";
        case GraphKind::cycle: return "cycle";
        case GraphKind::grid: return "grid";
        case GraphKind::random_tree: return "random_tree";
        case GraphKind::gnp_connected: return "gnp_connected";
        case GraphKind::intro_gadget: return "intro_gadget";
    }
    return "?";
}

GadgetIds intro_gadget_ids(int f) {
    GadgetIds ids;
    ids.v = 1;
    ids.w0 = 2;
    ids.w_last = static_cast<NodeId>(2 + 2 * f + 1);     // w_{2f+1}
    ids.u = static_cast<NodeId>(2 * f + 4);
    return ids;
}

Graph generate(GraphKind kind, const GenParams& params, std::uint64_t seed) {
    switch (kind) {
        case GraphKind::path: {
            if (params.n < 1) throw InvalidParams("path: n must be >= 1");
            return build_graph(params.n, path_edges(params.n));
        }
        case GraphKind::cycle: {
            if (params.n < 3) throw InvalidParams("cycle: n must be >= 3");
            auto e = path_edges(params.n);
            e.push_back({static_cast<NodeId>(params.n), 1});
            return build_graph(params.n, e);
        }
        case GraphKind::grid: {
            int r = params.rows, c = params.cols;
            if (r < 1 || c < 1) throw InvalidParams("grid: rows and cols must be >= 1");
            std::vector<Edge> e;
            auto id = [c](int i, int j) { return static_cast<NodeId>(i * c + j + 1); };
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) {
                    if (j + 1 < c) e.push_back({id(i, j), id(i, j + 1)});
                    if (i + 1 < r) e.push_back({id(i, j), id(i + 1, j)});
                }
            return build_graph(r * c, e);
        }
        case GraphKind::random_tree: {
            if (params.n < 1) throw InvalidParams("random_tree: n must be >= 1");
            std::mt19937_64 rng(seed);
            std::vector<Edge> e;
            for (int i = 2; i <= params.n; ++i) {
                NodeId parent = static_cast<NodeId>(1 + rng_below(rng, static_cast<std::uint64_t>(i - 1)));
                e.push_back({parent, static_cast<NodeId>(i)});
            }
            return build_graph(params.n, e);
        }
        case GraphKind::gnp_connected: {
            if (params.n < 1) throw InvalidParams("gnp: n must be >= 1");
            if (params.p < 0.0 || params.p > 1.0) throw InvalidParams("gnp: p must be in [0,1]");
            std::mt19937_64 rng(seed);
            const int max_attempts = 1000;
            for (int attempt = 0; attempt < max_attempts; ++attempt) {
                std::vector<Edge> e;
                for (int u = 1; u <= params.n; ++u)
                    for (int v = u + 1; v <= params.n; ++v) {
                        // 53-bit uniform draw in [0,1)
                        double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                        if (x < params.p) e.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
                    }
                if (edge_set_connected(params.n, e)) return build_graph(params.n, e);
            }
            throw GenerationFailed("gnp: no connected sample within 1000 attempts");
        }
        case GraphKind::intro_gadget: {
            int f = params.f;
            if (f < 1) throw InvalidParams("intro_gadget: f must be >= 1");
            if (params.tail < 0) throw InvalidParams("intro_gadget: tail must be >= 0");
            GadgetIds ids = intro_gadget_ids(f);
            int core = 2 * f + 4;
            std::vector<Edge> e;
            // w_i has ID 2+i, i = 0..2f+1
            for (int i = 0; i + 1 <= 2 * f + 1; ++i)
                e.push_back({static_cast<NodeId>(2 + i), static_cast<NodeId>(2 + i + 1)});
            e.push_back({ids.u, ids.w_last});
            e.push_back({ids.v, ids.w_last});
            // tail path t_1..t_tail off w_0, IDs above everything in the core
            NodeId prev = ids.w0;
            for (int i = 0; i < params.tail; ++i) {
                NodeId t = static_cast<NodeId>(core + 1 + i);
                e.push_back({prev, t});
                prev = t;
            }
            return build_graph(core + params.tail, e);
        }
    }
    throw InvalidParams("unreachable graph kind");
}

Graph relabel_ids(const Graph& g, RelabelStrategy strategy, std::uint64_t seed) {
    std::map<NodeId, NodeId> mapping;
    const auto& ids = g.ids();
    if (strategy == RelabelStrategy::sequential) {
        for (std::size_t i = 0; i < ids.size(); ++i) mapping[ids[i]] = static_cast<NodeId>(i + 1);
    } else {
        std::vector<NodeId> fresh(ids.size());
        for (std::size_t i = 0; i < fresh.size(); ++i) fresh[i] = static_cast<NodeId>(i + 1);
        std::mt19937_64 rng(seed);
        for (std::size_t i = fresh.size(); i > 1; --i)
            std::swap(fresh[i - 1], fresh[rng_below(rng, i)]);
        for (std::size_t i = 0; i < ids.size(); ++i) mapping[ids[i]] = fresh[i];
    }
    return relabel_ids(g, mapping);
}

Graph relabel_ids(const Graph& g, const std::map<NodeId, NodeId>& mapping) {
    std::set<NodeId> targets;
    for (NodeId id : g.ids()) {
        auto it = mapping.find(id);
        if (it == mapping.end()) throw NotBijective("relabel map misses node " + std::to_string(id));
        if (!targets.insert(it->second).second)
            throw NotBijective("relabel map target " + std::to_string(it->second) + " used twice");
    }
    std::vector<NodeId> nodes;
    nodes.reserve(g.ids().size());
    for (NodeId id : g.ids()) nodes.push_back(mapping.at(id));
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges()) edges.push_back({mapping.at(u), mapping.at(v)});
    return Graph(std::move(nodes), edges);
}

} // namespace relab
