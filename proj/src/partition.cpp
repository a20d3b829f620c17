#include "relab/partition.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <queue>
#include <set>

#include "relab/errors.hpp"
#include "stage.hpp"
#include "wire.hpp"

namespace relab {

// ---------------------------------------------------------------------------
// Pure local procedures
// ---------------------------------------------------------------------------

namespace {

// Group identifier for the span [start, end]: the ID of the first child in
// the span that still has ungrouped nodes. Every span contains one, because
// its count is at least f+1 >= 2 and u itself contributes only 1.
NodeId span_group_id(const std::vector<int>& remains, const std::vector<NodeId>& child_ids,
                     int start, int end) {
    int r_u = static_cast<int>(remains.size());
    for (int i = start; i <= end && i <= r_u; ++i)
        if (remains[static_cast<std::size_t>(i - 1)] > 0) return child_ids[static_cast<std::size_t>(i - 1)];
    return 0;
}

} // namespace

ComputeGroupsResult compute_groups_local_ids(bool in_s, const std::vector<NodeId>& child_ids,
                                             const std::vector<int>& remains, int f) {
    ComputeGroupsResult out;
    const int r_u = static_cast<int>(remains.size());
    int count = 0;
    int start = 1;
    for (int i = 1; i <= r_u + 1; ++i) {
        count += (i <= r_u) ? remains[static_cast<std::size_t>(i - 1)] : 1; // u itself counts 1
        if (count >= f + 1) {
            NodeId gid = span_group_id(remains, child_ids, start, i);
            out.groups.push_back({start, i, gid});
            count = 0;
            start = i + 1;
        }
    }
    bool self_grouped = !out.groups.empty() && out.groups.back().end == r_u + 1;
    if (self_grouped) {
        out.remain = 0;
    } else {
        int leftover = 1; // u itself
        int b = out.groups.empty() ? 0 : out.groups.back().end;
        for (int i = b + 1; i <= r_u; ++i) leftover += remains[static_cast<std::size_t>(i - 1)];
        out.remain = leftover;
    }
    if (in_s && !out.groups.empty()) {
        out.groups.back().end = r_u + 1; // root absorbs its leftover
        out.remain = 0;
        self_grouped = true;
    }
    if (self_grouped) out.self_group = out.groups.back().group;
    for (const auto& gs : out.groups)
        for (int i = gs.start; i <= gs.end && i <= r_u; ++i)
            if (remains[static_cast<std::size_t>(i - 1)] > 0)
                out.messages.push_back({i, gs.group});
    return out;
}

ComputeGroupsResult compute_groups_local(bool in_s, const std::vector<int>& remains, int f) {
    // Callers that only trace the counter arithmetic may omit real child
    // IDs; group identifiers then index children as 1, 2, ...
    std::vector<NodeId> ids(remains.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<NodeId>(i + 1);
    return compute_groups_local_ids(in_s, ids, remains, f);
}

std::vector<std::pair<int, NodeId>> relay_groups_local(NodeId group, int last_group_end,
                                                       const std::vector<int>& remains) {
    std::vector<std::pair<int, NodeId>> out;
    for (int i = last_group_end + 1; i <= static_cast<int>(remains.size()); ++i)
        if (remains[static_cast<std::size_t>(i - 1)] > 0) out.push_back({i, group});
    return out;
}

std::map<NodeId, std::vector<NodeId>> PartitionResult::groups(const Graph& g) const {
    std::map<NodeId, std::vector<NodeId>> out;
    for (int i = 0; i < g.node_count(); ++i) out[group_of[static_cast<std::size_t>(i)]].push_back(g.id_at(i));
    return out;
}

// ---------------------------------------------------------------------------
// Centralized simulation
// ---------------------------------------------------------------------------

PartitionResult partition_centralized(const Graph& g, const RulingSet& rs, int f) {
    const int n = g.node_count();
    if (n < f + 1) throw GraphTooSmall("partition: need n >= f+1");
    if (rs.f != f) throw InvalidParams("partition: ruling set built for different f");

    // BFS forest: first wave wins, ties to the smaller root ID. parent is
    // the smallest-ID neighbor that delivered the winning wave.
    std::vector<int> depth(static_cast<std::size_t>(n), -1);
    std::vector<NodeId> leader(static_cast<std::size_t>(n), 0);
    std::vector<std::optional<NodeId>> parent(static_cast<std::size_t>(n));
    for (NodeId m : rs.members) {
        int i = g.index_of(m);
        depth[static_cast<std::size_t>(i)] = 0;
        leader[static_cast<std::size_t>(i)] = m;
    }
    for (int r = 1; r <= 2 * f + 1; ++r) {
        std::vector<int> adopted;
        for (int i = 0; i < n; ++i) {
            if (depth[static_cast<std::size_t>(i)] >= 0) continue;
            NodeId best = 0;
            for (int w : g.adj(i))
                if (depth[static_cast<std::size_t>(w)] == r - 1) {
                    NodeId l = leader[static_cast<std::size_t>(w)];
                    if (best == 0 || l < best) best = l;
                }
            if (best == 0) continue;
            leader[static_cast<std::size_t>(i)] = best;
            for (int w : g.adj(i))
                if (depth[static_cast<std::size_t>(w)] == r - 1 && leader[static_cast<std::size_t>(w)] == best) {
                    parent[static_cast<std::size_t>(i)] = g.id_at(w);
                    break; // adj sorted by ID
                }
            adopted.push_back(i);
        }
        for (int i : adopted) depth[static_cast<std::size_t>(i)] = r;
    }
    for (int i = 0; i < n; ++i)
        if (depth[static_cast<std::size_t>(i)] < 0)
            throw InvalidParams("partition: ruling set does not dominate within 2f+1");

    // children sorted by increasing ID; dense indices keep ID order already
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        if (parent[static_cast<std::size_t>(i)])
            children[static_cast<std::size_t>(g.index_of(*parent[static_cast<std::size_t>(i)]))].push_back(i);

    // bottom-up ComputeGroups in height order
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::vector<int> height(static_cast<std::size_t>(n), 0);
    {
        // height = longest child chain; compute by repeated relaxation over
        // depth-descending order (parents precede children in depth)
        std::vector<int> by_depth = order;
        std::sort(by_depth.begin(), by_depth.end(),
                  [&](int a, int b) { return depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)]; });
        for (int i : by_depth)
            for (int c : children[static_cast<std::size_t>(i)])
                height[static_cast<std::size_t>(i)] =
                    std::max(height[static_cast<std::size_t>(i)], height[static_cast<std::size_t>(c)] + 1);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return height[static_cast<std::size_t>(a)] < height[static_cast<std::size_t>(b)]; });
    }

    std::vector<ComputeGroupsResult> cg(static_cast<std::size_t>(n));
    std::vector<NodeId> group(static_cast<std::size_t>(n), 0);
    std::vector<char> in_s(static_cast<std::size_t>(n), 0);
    for (NodeId m : rs.members) in_s[static_cast<std::size_t>(g.index_of(m))] = 1;
    for (int u : order) {
        std::vector<NodeId> child_ids;
        std::vector<int> remains;
        for (int c : children[static_cast<std::size_t>(u)]) {
            child_ids.push_back(g.id_at(c));
            remains.push_back(cg[static_cast<std::size_t>(c)].remain);
        }
        cg[static_cast<std::size_t>(u)] = compute_groups_local_ids(in_s[static_cast<std::size_t>(u)] != 0,
                                                                   child_ids, remains, f);
        if (cg[static_cast<std::size_t>(u)].self_group)
            group[static_cast<std::size_t>(u)] = *cg[static_cast<std::size_t>(u)].self_group;
    }

    // top-down assignment and relay
    std::vector<HEdge> hedges;
    std::deque<std::pair<int, NodeId>> dq;
    for (int u = 0; u < n; ++u)
        for (const auto& [pos, gid] : cg[static_cast<std::size_t>(u)].messages) {
            int c = children[static_cast<std::size_t>(u)][static_cast<std::size_t>(pos - 1)];
            hedges.push_back({g.id_at(u), g.id_at(c), gid});
            dq.push_back({c, gid});
        }
    while (!dq.empty()) {
        auto [w, gid] = dq.front();
        dq.pop_front();
        group[static_cast<std::size_t>(w)] = gid;
        const auto& cgw = cg[static_cast<std::size_t>(w)];
        int b = cgw.groups.empty() ? 0 : cgw.groups.back().end;
        std::vector<int> remains;
        for (int c : children[static_cast<std::size_t>(w)]) remains.push_back(cg[static_cast<std::size_t>(c)].remain);
        for (const auto& [pos, g2] : relay_groups_local(gid, b, remains)) {
            int c = children[static_cast<std::size_t>(w)][static_cast<std::size_t>(pos - 1)];
            hedges.push_back({g.id_at(w), g.id_at(c), g2});
            dq.push_back({c, g2});
        }
    }

    // group-id upcast: first arrival wins, ties to the smaller group id;
    // provider ties go to the smaller child ID
    std::vector<int> up_time(static_cast<std::size_t>(n), -1);
    std::vector<NodeId> up_gid(static_cast<std::size_t>(n), 0);
    std::vector<int> up_provider(static_cast<std::size_t>(n), -1);
    auto first_from_children = [&](int u) -> std::optional<std::pair<std::pair<int, NodeId>, int>> {
        int tmin = -1;
        for (int c : children[static_cast<std::size_t>(u)]) {
            int t = up_time[static_cast<std::size_t>(c)];
            if (t < 0) continue;
            if (tmin < 0 || t < tmin) tmin = t;
        }
        if (tmin < 0) return std::nullopt;
        NodeId gid = 0;
        for (int c : children[static_cast<std::size_t>(u)])
            if (up_time[static_cast<std::size_t>(c)] == tmin &&
                (gid == 0 || up_gid[static_cast<std::size_t>(c)] < gid))
                gid = up_gid[static_cast<std::size_t>(c)];
        int provider = -1;
        for (int c : children[static_cast<std::size_t>(u)])
            if (up_time[static_cast<std::size_t>(c)] == tmin && up_gid[static_cast<std::size_t>(c)] == gid) {
                provider = c;
                break; // children sorted by ID
            }
        return std::make_pair(std::make_pair(tmin, gid), provider);
    };
    for (int u : order) {
        if (in_s[static_cast<std::size_t>(u)]) continue;
        if (group[static_cast<std::size_t>(u)] != 0) {
            up_time[static_cast<std::size_t>(u)] = 1;
            up_gid[static_cast<std::size_t>(u)] = group[static_cast<std::size_t>(u)];
            continue;
        }
        auto first = first_from_children(u);
        if (!first) continue; // nothing to forward
        up_time[static_cast<std::size_t>(u)] = first->first.first + 1;
        up_gid[static_cast<std::size_t>(u)] = first->first.second;
        up_provider[static_cast<std::size_t>(u)] = first->second;
    }

    // root remainder
    std::vector<int> remains_of(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) remains_of[static_cast<std::size_t>(u)] = cg[static_cast<std::size_t>(u)].remain;
    for (NodeId m : rs.members) {
        int v = g.index_of(m);
        if (group[static_cast<std::size_t>(v)] != 0) continue;
        auto first = first_from_children(v);
        if (!first) throw PhaseOverrun("partition: root " + std::to_string(m) + " received no group id");
        NodeId gid = first->first.second;
        int provider = first->second;
        group[static_cast<std::size_t>(v)] = gid;
        std::deque<std::pair<int, int>> down; // (node, provider child or -1)
        auto emit = [&](int u, int prov) {
            std::set<int> recipients;
            for (int c : children[static_cast<std::size_t>(u)])
                if (remains_of[static_cast<std::size_t>(c)] > 0 && group[static_cast<std::size_t>(c)] == 0)
                    recipients.insert(c);
            if (prov >= 0) recipients.insert(prov);
            for (int c : recipients) {
                hedges.push_back({g.id_at(u), g.id_at(c), gid});
                if (group[static_cast<std::size_t>(c)] == 0) {
                    group[static_cast<std::size_t>(c)] = gid;
                    down.push_back({c, up_provider[static_cast<std::size_t>(c)]});
                }
            }
        };
        emit(v, provider);
        while (!down.empty()) {
            auto [u, prov] = down.front();
            down.pop_front();
            emit(u, prov);
        }
    }

    for (int i = 0; i < n; ++i)
        if (group[static_cast<std::size_t>(i)] == 0)
            throw PhaseOverrun("partition: node " + std::to_string(g.id_at(i)) + " ended without a group");

    PartitionResult pr;
    pr.group_of = std::move(group);
    pr.leader = std::move(leader);
    pr.tree_parent = std::move(parent);
    std::sort(hedges.begin(), hedges.end());
    hedges.erase(std::unique(hedges.begin(), hedges.end()), hedges.end());
    pr.shortcut_edges = std::move(hedges);
    return pr;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

VerifyReport verify_partition(const Graph& g, const PartitionResult& pr, int f) {
    VerifyReport report;
    const int n = g.node_count();
    if (static_cast<int>(pr.group_of.size()) != n) {
        report.fail("shape", "group_of size does not match graph");
        return report;
    }
    for (int i = 0; i < n; ++i)
        if (pr.group_of[static_cast<std::size_t>(i)] == 0)
            report.fail("cover", "node " + std::to_string(g.id_at(i)) + " has no group");
    if (!report.ok) return report;

    auto groups = pr.groups(g);
    for (const auto& [gid, members] : groups) {
        int s = static_cast<int>(members.size());
        if (s < f + 1 || s > 3 * f + 1)
            report.fail("size", "group " + std::to_string(gid) + " has size " + std::to_string(s) +
                                    ", outside [" + std::to_string(f + 1) + ", " + std::to_string(3 * f + 1) + "]");
        if (!std::binary_search(members.begin(), members.end(), gid))
            report.fail("identifier", "group id " + std::to_string(gid) + " is not one of its members");
    }

    // shortcut edges must exist in G
    for (const auto& he : pr.shortcut_edges) {
        auto nb = g.neighbors(he.from);
        if (!std::binary_search(nb.begin(), nb.end(), he.to))
            report.fail("shortcut", "H edge (" + std::to_string(he.from) + "," + std::to_string(he.to) +
                                        ") is not a graph edge");
    }
    if (!report.ok) return report;

    // per-edge subgraph membership
    std::map<std::pair<NodeId, NodeId>, std::set<NodeId>> edge_groups;
    auto canon = [](NodeId a, NodeId b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
    for (const auto& [u, v] : g.edges())
        if (pr.group_at(g, u) == pr.group_at(g, v)) edge_groups[canon(u, v)].insert(pr.group_at(g, u));
    for (const auto& he : pr.shortcut_edges) edge_groups[canon(he.from, he.to)].insert(he.group);
    for (const auto& [e, gs] : edge_groups)
        if (static_cast<int>(gs.size()) > 2)
            report.fail("congestion", "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                          ") serves " + std::to_string(gs.size()) + " subgraphs");

    // per-group connectivity and diameter over G[Q] plus shortcuts
    std::map<NodeId, std::vector<HEdge>> h_of;
    for (const auto& he : pr.shortcut_edges) h_of[he.group].push_back(he);
    for (const auto& [gid, members] : groups) {
        std::set<NodeId> nodes(members.begin(), members.end());
        std::map<NodeId, std::vector<NodeId>> adj;
        for (NodeId u : members)
            for (NodeId w : g.neighbors(u))
                if (nodes.count(w)) adj[u].push_back(w);
        for (const auto& he : h_of[gid]) {
            adj[he.from].push_back(he.to);
            adj[he.to].push_back(he.from);
            nodes.insert(he.from);
            nodes.insert(he.to);
        }
        // BFS from every subgraph node
        int diameter = 0;
        bool connected = true;
        for (NodeId src : nodes) {
            std::map<NodeId, int> dist;
            std::queue<NodeId> q;
            dist[src] = 0;
            q.push(src);
            while (!q.empty()) {
                NodeId x = q.front();
                q.pop();
                for (NodeId y : adj[x])
                    if (!dist.count(y)) {
                        dist[y] = dist[x] + 1;
                        q.push(y);
                    }
            }
            for (NodeId y : nodes) {
                if (!dist.count(y)) {
                    connected = false;
                } else {
                    diameter = std::max(diameter, dist[y]);
                }
            }
        }
        if (!connected)
            report.fail("connectivity", "subgraph of group " + std::to_string(gid) + " is disconnected");
        else if (diameter > 4 * f)
            report.fail("diameter", "subgraph of group " + std::to_string(gid) + " has diameter " +
                                        std::to_string(diameter) + " > " + std::to_string(4 * f));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Distributed partitioning program
// ---------------------------------------------------------------------------

int partition_round_total(int f) { return 5 * (2 * f + 2); }

std::vector<Phase> partition_phases(int f, int start_round) {
    std::vector<Phase> ph;
    const int len = 2 * f + 2;
    const char* names[] = {"part.bfs", "part.remain", "part.assign", "part.upcast", "part.root"};
    int at = start_round;
    for (const char* name : names) {
        ph.push_back({name, at, len});
        at += len;
    }
    return ph;
}

/// Node-local state machine for the partitioning algorithm. Rounds are
/// relative (1-based) to the stage start; the owner maps engine rounds.
class PartitionLogic final : public detail::PartitionStage {
public:
    void configure(int f, bool in_s, const FieldWidths& w) {
        f_ = f;
        in_s_ = in_s;
        w_ = w;
    }

    void init(const NodeContext& ctx) override {
        self_ = ctx.self;
        nbr_ = ctx.neighbors;
        if (in_s_) leader_ = self_;
    }

    int total_rounds() const override { return partition_round_total(f_); }

    void send(int rel, MessageVec& out) override {
        const int L = 2 * f_ + 2;
        if (rel <= L) {
            if (rel == 1 && in_s_)
                for (std::size_t a = 0; a < nbr_.size(); ++a)
                    out[a] = wire::pack(wire::PART_WAVE, leader_, 0, w_);
            if (wave_send_round_ == rel && !in_s_) {
                for (std::size_t a = 0; a < nbr_.size(); ++a) {
                    if (static_cast<int>(a) == parent_slot_)
                        out[a] = wire::pack(wire::PART_WAVE_CHILD, leader_, 0, w_);
                    else if (adopted_round_ < 2 * f_ + 1)
                        out[a] = wire::pack(wire::PART_WAVE, leader_, 0, w_);
                }
            }
        } else if (rel <= 2 * L) {
            if (rel == L + 1) finalize_children();
            if (!in_s_ && cg_ready_ && !remain_sent_) {
                out[static_cast<std::size_t>(parent_slot_)] =
                    wire::pack(wire::PART_REMAIN, 0, static_cast<std::uint64_t>(cg_.remain), w_);
                remain_sent_ = true;
            }
        } else if (rel <= 3 * L) {
            if (rel == 2 * L + 1) {
                if (!cg_ready_) throw PhaseOverrun("partition: ComputeGroups incomplete at node " +
                                                   std::to_string(self_));
                for (const auto& [pos, gid] : cg_.messages) queue_assign(pos, gid);
            }
            flush_assigns(out);
        } else if (rel <= 4 * L) {
            if (rel == 3 * L + 1 && !in_s_ && group_ != 0) {
                out[static_cast<std::size_t>(parent_slot_)] = wire::pack(wire::PART_UP, group_, 0, w_);
                up_sent_ = true;
            }
            if (up_forward_round_ == rel) {
                out[static_cast<std::size_t>(parent_slot_)] = wire::pack(wire::PART_UP, up_gid_, 0, w_);
                up_sent_ = true;
            }
        } else {
            if (rel == 4 * L + 1 && in_s_ && group_ == 0) {
                if (up_gid_ == 0)
                    throw PhaseOverrun("partition: root " + std::to_string(self_) + " received no group id");
                group_ = up_gid_;
                queue_root_assigns(up_provider_slot_);
            }
            flush_root_assigns(out);
        }
    }

    void receive(int rel, const MessageVec& in) override {
        const int L = 2 * f_ + 2;
        if (rel <= L) {
            NodeId best = 0;
            int best_slot = -1;
            for (std::size_t a = 0; a < in.size(); ++a) {
                if (!in[a]) continue;
                auto m = wire::unpack(*in[a], w_);
                if (m.tag == wire::PART_WAVE_CHILD) child_slots_.push_back(static_cast<int>(a));
                if ((m.tag == wire::PART_WAVE || m.tag == wire::PART_WAVE_CHILD) && !in_s_ && leader_ == 0 &&
                    rel <= 2 * f_ + 1) {
                    if (best == 0 || m.id < best) {
                        best = m.id;
                        best_slot = static_cast<int>(a);
                    }
                }
            }
            if (!in_s_ && leader_ == 0 && best != 0) {
                leader_ = best;
                parent_slot_ = best_slot;
                adopted_round_ = rel;
                wave_send_round_ = rel + 1;
            }
        } else if (rel <= 2 * L) {
            for (std::size_t a = 0; a < in.size(); ++a) {
                if (!in[a]) continue;
                auto m = wire::unpack(*in[a], w_);
                if (m.tag != wire::PART_REMAIN) continue;
                int pos = pos_of_slot_[a];
                remains_[static_cast<std::size_t>(pos - 1)] = static_cast<int>(m.aux);
                if (++remain_count_ == static_cast<int>(child_slots_.size())) run_compute_groups();
            }
        } else if (rel <= 3 * L) {
            for (std::size_t a = 0; a < in.size(); ++a) {
                if (!in[a]) continue;
                auto m = wire::unpack(*in[a], w_);
                if (m.tag != wire::PART_ASSIGN) continue;
                tags_.push_back({static_cast<int>(a), m.id});
                if (group_ != 0) throw ProgramFault("partition: node " + std::to_string(self_) +
                                                    " assigned twice");
                group_ = m.id;
                int b = cg_.groups.empty() ? 0 : cg_.groups.back().end;
                for (const auto& [pos, gid] : relay_groups_local(m.id, b, remains_)) queue_assign(pos, gid);
            }
        } else if (rel <= 4 * L) {
            NodeId best = 0;
            int best_slot = -1;
            for (std::size_t a = 0; a < in.size(); ++a) {
                if (!in[a]) continue;
                auto m = wire::unpack(*in[a], w_);
                if (m.tag != wire::PART_UP) continue;
                if (up_gid_recorded_ || up_sent_) continue;
                if (best == 0 || m.id < best) {
                    best = m.id;
                    best_slot = static_cast<int>(a);
                }
            }
            if (best != 0) {
                up_gid_recorded_ = true;
                up_gid_ = best;
                up_provider_slot_ = best_slot;
                if (!in_s_ && group_ == 0) up_forward_round_ = rel + 1;
            }
        } else {
            for (std::size_t a = 0; a < in.size(); ++a) {
                if (!in[a]) continue;
                auto m = wire::unpack(*in[a], w_);
                if (m.tag != wire::PART_ROOT_ASSIGN) continue;
                tags_.push_back({static_cast<int>(a), m.id});
                if (group_ == 0) {
                    group_ = m.id;
                    queue_root_assigns(up_provider_slot_);
                }
            }
            if (rel == 5 * L) finish();
        }
    }

    // --- results ---
    NodeId group() const override { return group_; }
    NodeId leader() const override { return leader_; }
    std::optional<NodeId> parent_id() const override {
        if (parent_slot_ < 0) return std::nullopt;
        return nbr_[static_cast<std::size_t>(parent_slot_)];
    }
    const std::vector<HEdge>& h_sent() const override { return h_sent_; }
    /// (neighbor id, group) pairs this node knows route group traffic.
    std::vector<std::pair<NodeId, NodeId>> tag_ids() const override {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (const auto& [slot, gid] : tags_)
            out.push_back({nbr_[static_cast<std::size_t>(slot)], gid});
        return out;
    }

private:
    void finalize_children() {
        std::sort(child_slots_.begin(), child_slots_.end()); // slot order == ID order
        child_slots_.erase(std::unique(child_slots_.begin(), child_slots_.end()), child_slots_.end());
        pos_of_slot_.assign(nbr_.size(), 0);
        for (std::size_t k = 0; k < child_slots_.size(); ++k)
            pos_of_slot_[static_cast<std::size_t>(child_slots_[k])] = static_cast<int>(k) + 1;
        remains_.assign(child_slots_.size(), 0);
        if (child_slots_.empty()) run_compute_groups();
    }

    void run_compute_groups() {
        std::vector<NodeId> ids;
        for (int slot : child_slots_) ids.push_back(nbr_[static_cast<std::size_t>(slot)]);
        cg_ = compute_groups_local_ids(in_s_, ids, remains_, f_);
        if (cg_.self_group) group_ = *cg_.self_group;
        cg_ready_ = true;
    }

    void queue_assign(int pos, NodeId gid) {
        int slot = child_slots_[static_cast<std::size_t>(pos - 1)];
        pending_assign_.push_back({slot, gid});
        assigned_child_[slot] = true;
    }

    void flush_assigns(MessageVec& out) {
        for (const auto& [slot, gid] : pending_assign_) {
            out[static_cast<std::size_t>(slot)] = wire::pack(wire::PART_ASSIGN, gid, 0, w_);
            h_sent_.push_back({self_, nbr_[static_cast<std::size_t>(slot)], gid});
            tags_.push_back({slot, gid});
        }
        pending_assign_.clear();
    }

    void queue_root_assigns(int provider_slot) {
        std::set<int> recipients;
        for (std::size_t k = 0; k < child_slots_.size(); ++k) {
            int slot = child_slots_[k];
            if (remains_[k] > 0 && !assigned_child_.count(slot)) recipients.insert(slot);
        }
        if (provider_slot >= 0) recipients.insert(provider_slot);
        for (int slot : recipients) {
            pending_root_assign_.push_back({slot, group_});
            assigned_child_[slot] = true;
        }
    }

    void flush_root_assigns(MessageVec& out) {
        for (const auto& [slot, gid] : pending_root_assign_) {
            out[static_cast<std::size_t>(slot)] = wire::pack(wire::PART_ROOT_ASSIGN, gid, 0, w_);
            h_sent_.push_back({self_, nbr_[static_cast<std::size_t>(slot)], gid});
            tags_.push_back({slot, gid});
        }
        pending_root_assign_.clear();
    }

    void finish() {
        if (group_ == 0)
            throw PhaseOverrun("partition: node " + std::to_string(self_) + " ended without a group");
    }

    int f_ = 0;
    bool in_s_ = false;
    FieldWidths w_;
    NodeId self_ = 0;
    std::vector<NodeId> nbr_;

    // bfs stage
    NodeId leader_ = 0;
    int parent_slot_ = -1;
    int adopted_round_ = -1;
    int wave_send_round_ = -1;
    std::vector<int> child_slots_;
    std::vector<int> pos_of_slot_;

    // grouping stage
    std::vector<int> remains_;
    int remain_count_ = 0;
    bool cg_ready_ = false;
    bool remain_sent_ = false;
    ComputeGroupsResult cg_;
    NodeId group_ = 0;
    std::vector<std::pair<int, NodeId>> pending_assign_;
    std::map<int, bool> assigned_child_;

    // upcast / root remainder
    bool up_sent_ = false;
    bool up_gid_recorded_ = false;
    NodeId up_gid_ = 0;
    int up_provider_slot_ = -1;
    int up_forward_round_ = -1;
    std::vector<std::pair<int, NodeId>> pending_root_assign_;

    std::vector<HEdge> h_sent_;
    std::vector<std::pair<int, NodeId>> tags_;

    friend class PartitionProgram;
};

class PartitionProgram final : public NodeProgram {
public:
    PartitionProgram(int f, bool in_s, const FieldWidths& w) { logic_.configure(f, in_s, w); }

    void init(const NodeContext& ctx) override { logic_.init(ctx); }
    void send(int round, MessageVec& out) override { logic_.send(round, out); }
    void receive(int round, const MessageVec& in) override {
        logic_.receive(round, in);
        if (round == logic_.total_rounds()) done_ = true;
    }
    bool halted() const override { return done_; }
    BitString output() const override {
        BitString b;
        b.append_uint(logic_.group() == 0 ? 0 : logic_.group() - 1, 32);
        return b;
    }

    PartitionLogic& logic() { return logic_; }
    const PartitionLogic& logic() const { return logic_; }

private:
    PartitionLogic logic_;
    bool done_ = false;
};

std::unique_ptr<detail::PartitionStage> detail::make_partition_stage(int f, bool in_s,
                                                                     const FieldWidths& w) {
    auto p = std::make_unique<PartitionLogic>();
    p->configure(f, in_s, w);
    return p;
}

std::vector<std::unique_ptr<NodeProgram>> make_partition_programs(const Graph& g, int f,
                                                                  const std::vector<char>& in_s,
                                                                  int bandwidth_bits) {
    if (static_cast<int>(in_s.size()) != g.node_count())
        throw InvalidParams("make_partition_programs: bit vector size mismatch");
    FieldWidths w = field_widths(bandwidth_bits, f);
    for (NodeId id : g.ids())
        if (bitwidth(id - 1) > w.id_bits)
            throw InvalidParams("node id " + std::to_string(id) + " does not fit the bandwidth's id field");
    std::vector<std::unique_ptr<NodeProgram>> out;
    for (int i = 0; i < g.node_count(); ++i)
        out.push_back(std::make_unique<PartitionProgram>(f, in_s[static_cast<std::size_t>(i)] != 0, w));
    return out;
}

PartitionResult collect_partition_outputs(const Graph& g,
                                          const std::vector<std::unique_ptr<NodeProgram>>& programs) {
    PartitionResult pr;
    const int n = g.node_count();
    pr.group_of.resize(static_cast<std::size_t>(n));
    pr.leader.resize(static_cast<std::size_t>(n));
    pr.tree_parent.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto* p = dynamic_cast<PartitionProgram*>(programs[static_cast<std::size_t>(i)].get());
        if (!p) throw InvalidParams("collect_partition_outputs: not a partition program");
        pr.group_of[static_cast<std::size_t>(i)] = p->logic().group();
        pr.leader[static_cast<std::size_t>(i)] = p->logic().leader();
        pr.tree_parent[static_cast<std::size_t>(i)] = p->logic().parent_id();
        for (const auto& he : p->logic().h_sent()) pr.shortcut_edges.push_back(he);
    }
    std::sort(pr.shortcut_edges.begin(), pr.shortcut_edges.end());
    pr.shortcut_edges.erase(std::unique(pr.shortcut_edges.begin(), pr.shortcut_edges.end()),
                            pr.shortcut_edges.end());
    return pr;
}

} // namespace relab
