#include <algorithm>
#include <map>
#include <set>

#include "relab/errors.hpp"
#include "relab/partition.hpp"
#include "stage.hpp"
#include "wire.hpp"

namespace relab {

CollectSchedule collect_schedule(int f, int payload_bits, int bandwidth_bits) {
    CollectSchedule s;
    FieldWidths w = field_widths(bandwidth_bits, f);
    int len_bits = bitwidth(static_cast<std::uint64_t>(payload_bits));
    s.record_bits = w.id_bits + 1 + len_bits + payload_bits;
    const int smax = 3 * f + 1;
    const int chunk_payload = std::max(1, bandwidth_bits - 8);
    // whole stream: one framing bit per record plus a terminator
    const long long stream_bits = static_cast<long long>(smax) * (s.record_bits + 1) + 1;
    const int chunks = static_cast<int>((stream_bits + chunk_payload - 1) / chunk_payload);
    // chunks one record occupies; the convergecast forwards record-at-a-time
    const int rec_chunks = (s.record_bits + 1 + chunk_payload - 1) / chunk_payload;
    const int depth = 4 * f + 2;
    s.announce = 1;
    s.orient = 8 * f + 8;
    s.converge = 2 * depth * rec_chunks + 2 * chunks + 8;
    s.broadcast = 2 * depth + 2 * chunks + 8;
    return s;
}

namespace {

/// Incremental parser for a framed record stream: (1 record)* 0.
struct FrameParser {
    BitString buf;
    std::size_t pos = 0;
    bool done = false;

    void feed(const BitString& bits) { buf.append(bits); }

    std::vector<BitString> drain(int record_bits) {
        std::vector<BitString> out;
        while (!done && pos < buf.size()) {
            if (!buf.get(pos)) {
                done = true;
                ++pos;
                break;
            }
            if (buf.size() - pos - 1 < static_cast<std::size_t>(record_bits)) break;
            out.push_back(buf.slice(pos + 1, static_cast<std::size_t>(record_bits)));
            pos += 1 + static_cast<std::size_t>(record_bits);
        }
        return out;
    }
};

} // namespace

/// Node-local state machine for intra-group exchange over G[Q] plus
/// shortcut edges. An edge serving two subgraphs alternates between their
/// groups round-robin; both endpoints derive the same per-edge group list,
/// so stream chunks need no group header.
class CollectLogic final : public detail::CollectStage {
public:
    void configure(int f, NodeId gid, std::optional<BitString> payload,
                   std::vector<std::pair<NodeId, NodeId>> tag_ids, // (neighbor, group)
                   int payload_bits, int bandwidth_bits) {
        f_ = f;
        gid_ = gid;
        payload_ = std::move(payload);
        tag_ids_ = std::move(tag_ids);
        Y_ = payload_bits;
        B_ = bandwidth_bits;
        w_ = field_widths(bandwidth_bits, f);
        len_bits_ = bitwidth(static_cast<std::uint64_t>(Y_));
        sched_ = collect_schedule(f, payload_bits, bandwidth_bits);
        if (payload_ && static_cast<int>(payload_->size()) > Y_)
            throw InvalidParams("collect: payload longer than the declared width");
    }

    void init(const NodeContext& ctx) override {
        self_ = ctx.self;
        nbr_ = ctx.neighbors;
    }

    int total_rounds() const override { return sched_.total(); }

    void send(int rel, MessageVec& out) override {
        if (rel == 1) {
            for (std::size_t a = 0; a < nbr_.size(); ++a)
                out[a] = wire::pack(wire::COLLECT_ANNOUNCE, gid_, 0, w_);
            return;
        }
        const int r3 = rel - 1 - sched_.orient - sched_.converge;
        if (r3 == 1) begin_broadcast();
        for (std::size_t a = 0; a < nbr_.size(); ++a) {
            NodeId g = turn_of(static_cast<int>(a), rel);
            if (g == 0) continue;
            if (rel - 1 <= sched_.orient) {
                auto ack = pending_ack_.find({static_cast<int>(a), g});
                if (ack != pending_ack_.end()) {
                    out[a] = wire::pack(wire::COLLECT_ORIENT_CHILD, g, 0, w_);
                    pending_ack_.erase(ack);
                    continue;
                }
                auto po = pending_orient_.find({static_cast<int>(a), g});
                if (po != pending_orient_.end()) {
                    out[a] = wire::pack(wire::COLLECT_ORIENT, g, 0, w_);
                    pending_orient_.erase(po);
                }
            } else if (r3 < 1) {
                // convergecast: stream up the oriented edge
                if (self_ == g) continue;
                auto ul = uplink_.find(g);
                if (ul == uplink_.end() || ul->second != static_cast<int>(a)) continue;
                auto& st = up_[g];
                if (st.cursor >= st.buf.size()) continue;
                std::size_t k = std::min(static_cast<std::size_t>(B_ - 8), st.buf.size() - st.cursor);
                BitString chunk;
                chunk.append_uint(wire::COLLECT_STREAM_UP, 8);
                chunk.append(st.buf.slice(st.cursor, k));
                st.cursor += k;
                out[a] = std::move(chunk);
            } else {
                // broadcast: stream down tree edges, raw bits
                auto it = down_.find(g);
                if (it == down_.end()) continue;
                auto cur = it->second.cursors.find(static_cast<int>(a));
                if (cur == it->second.cursors.end()) continue;
                if (cur->second >= it->second.buf.size()) continue;
                std::size_t k = std::min(static_cast<std::size_t>(B_ - 8),
                                         it->second.buf.size() - cur->second);
                BitString chunk;
                chunk.append_uint(wire::COLLECT_STREAM_DOWN, 8);
                chunk.append(it->second.buf.slice(cur->second, k));
                cur->second += k;
                out[a] = std::move(chunk);
            }
        }
    }

    void receive(int rel, const MessageVec& in) override {
        if (rel == 1) {
            neighbor_group_.assign(nbr_.size(), 0);
            for (std::size_t a = 0; a < in.size(); ++a)
                if (in[a]) neighbor_group_[a] = wire::unpack(*in[a], w_).id;
            build_edge_sets();
            return;
        }
        for (std::size_t a = 0; a < in.size(); ++a) {
            if (!in[a]) continue;
            wire::Tag tag = wire::peek_tag(*in[a]);
            if (tag == wire::COLLECT_ORIENT || tag == wire::COLLECT_ORIENT_CHILD) {
                auto m = wire::unpack(*in[a], w_);
                if (tag == wire::COLLECT_ORIENT_CHILD) {
                    tree_children_[m.id].push_back(static_cast<int>(a));
                    continue;
                }
                if (!routes(m.id) || self_ == m.id) continue;
                if (uplink_.count(m.id)) continue;
                uplink_[m.id] = static_cast<int>(a);
                pending_ack_.insert({static_cast<int>(a), m.id});
                for (int slot : edges_of_group_[m.id])
                    if (slot != static_cast<int>(a)) pending_orient_.insert({slot, m.id});
            } else if (tag == wire::COLLECT_STREAM_UP) {
                NodeId g = turn_of(static_cast<int>(a), rel);
                auto& parser = up_parsers_[g][static_cast<int>(a)];
                parser.feed(in[a]->slice(8, in[a]->size() - 8));
                for (const BitString& rec : parser.drain(sched_.record_bits)) deliver_up(g, rec);
                if (parser.done && !child_done_.count({static_cast<int>(a), g})) {
                    child_done_.insert({static_cast<int>(a), g});
                    note_child_done(g);
                }
            } else if (tag == wire::COLLECT_STREAM_DOWN) {
                NodeId g = turn_of(static_cast<int>(a), rel);
                BitString raw = in[a]->slice(8, in[a]->size() - 8);
                down_[g].buf.append(raw); // forwarded verbatim to tree children
                auto& parser = down_in_[g];
                parser.feed(raw);
                if (g == gid_)
                    for (const BitString& rec : parser.drain(sched_.record_bits))
                        final_records_.push_back(rec);
                else
                    parser.drain(sched_.record_bits);
                if (parser.done) down_done_.insert(g);
            }
        }
        if (rel == 1 + sched_.orient) begin_converge();
        if (rel == total_rounds()) finish();
    }

    /// (member id, payload) of this node's own group, sorted by id.
    std::vector<std::pair<NodeId, std::optional<BitString>>> records() const override {
        std::vector<std::pair<NodeId, std::optional<BitString>>> out;
        for (const auto& rec : final_records_) out.push_back(parse_record(rec));
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

private:
    bool routes(NodeId g) const { return edges_of_group_.count(g) != 0; }

    void build_edge_sets() {
        std::set<std::pair<int, NodeId>> tags;
        for (const auto& [nb, g] : tag_ids_) {
            auto it = std::lower_bound(nbr_.begin(), nbr_.end(), nb);
            if (it == nbr_.end() || *it != nb)
                throw InvalidParams("collect: tag names a non-neighbor");
            tags.insert({static_cast<int>(it - nbr_.begin()), g});
        }
        for (std::size_t a = 0; a < nbr_.size(); ++a)
            if (neighbor_group_[a] == gid_) tags.insert({static_cast<int>(a), gid_});
        for (const auto& [slot, g] : tags) edges_of_group_[g].push_back(slot);
        groups_on_slot_.assign(nbr_.size(), {});
        for (const auto& [g, slots] : edges_of_group_)
            for (int slot : slots) groups_on_slot_[static_cast<std::size_t>(slot)].push_back(g);
        for (auto& gs : groups_on_slot_) std::sort(gs.begin(), gs.end());
        if (routes(self_)) // this node's ID names a group: it starts the orientation
            for (int slot : edges_of_group_[self_]) pending_orient_.insert({slot, self_});
    }

    // Which group owns slot `a` in round `rel`; identical on both endpoints.
    NodeId turn_of(int a, int rel) const {
        const auto& gs = groups_on_slot_[static_cast<std::size_t>(a)];
        if (gs.empty()) return 0;
        if (gs.size() == 1) return gs[0];
        return gs[static_cast<std::size_t>(rel % static_cast<int>(gs.size()))];
    }

    void begin_converge() {
        for (const auto& [g, slots] : edges_of_group_) {
            (void)slots;
            bool root = (self_ == g);
            if (!root && !uplink_.count(g))
                throw PhaseOverrun("collect: node " + std::to_string(self_) +
                                   " not oriented for group " + std::to_string(g));
            int kids = tree_children_.count(g) ? static_cast<int>(tree_children_[g].size()) : 0;
            children_left_[g] = kids;
            if (g == gid_) {
                if (root)
                    final_records_.push_back(own_record());
                else
                    push_frame(up_[g].buf, own_record());
            }
            if (!root && kids == 0) up_[g].buf.push_back(false); // terminator
        }
    }

    void deliver_up(NodeId g, const BitString& rec) {
        if (self_ == g)
            final_records_.push_back(rec);
        else
            push_frame(up_[g].buf, rec);
    }

    void note_child_done(NodeId g) {
        if (--children_left_[g] == 0 && self_ != g) up_[g].buf.push_back(false);
    }

    void begin_broadcast() {
        for (const auto& [g, slots] : edges_of_group_) {
            (void)slots;
            auto& d = down_[g];
            if (tree_children_.count(g))
                for (int slot : tree_children_[g]) d.cursors[slot] = 0;
            if (self_ == g) {
                if (children_left_[g] != 0)
                    throw PhaseOverrun("collect: root " + std::to_string(self_) +
                                       " missing subtree records");
                std::sort(final_records_.begin(), final_records_.end(),
                          [](const BitString& x, const BitString& y) {
                              return x.to_string() < y.to_string(); // fixed width, id leads
                          });
                for (const BitString& rec : final_records_) push_frame(d.buf, rec);
                d.buf.push_back(false);
            }
        }
    }

    void finish() {
        if (self_ != gid_ && !down_done_.count(gid_))
            throw PhaseOverrun("collect: node " + std::to_string(self_) +
                               " did not receive its group broadcast");
    }

    static void push_frame(BitString& buf, const BitString& rec) {
        buf.push_back(true);
        buf.append(rec);
    }

    BitString own_record() const {
        BitString rec;
        rec.append_uint(self_ - 1, w_.id_bits);
        rec.push_back(payload_.has_value());
        std::size_t len = payload_ ? payload_->size() : 0;
        if (len_bits_ > 0) rec.append_uint(len, len_bits_);
        if (payload_) rec.append(*payload_);
        for (std::size_t i = len; i < static_cast<std::size_t>(Y_); ++i) rec.push_back(false);
        return rec;
    }

    std::pair<NodeId, std::optional<BitString>> parse_record(const BitString& rec) const {
        std::size_t pos = 0;
        NodeId id = static_cast<NodeId>(rec.read_uint(pos, w_.id_bits)) + 1;
        pos += static_cast<std::size_t>(w_.id_bits);
        bool present = rec.get(pos++);
        std::size_t len = len_bits_ ? rec.read_uint(pos, len_bits_) : 0;
        pos += static_cast<std::size_t>(len_bits_);
        if (!present) return {id, std::nullopt};
        return {id, rec.slice(pos, len)};
    }

    int f_ = 0;
    NodeId gid_ = 0;
    std::optional<BitString> payload_;
    std::vector<std::pair<NodeId, NodeId>> tag_ids_;
    int Y_ = 0, B_ = 0, len_bits_ = 0;
    FieldWidths w_;
    CollectSchedule sched_;
    NodeId self_ = 0;
    std::vector<NodeId> nbr_;

    std::vector<NodeId> neighbor_group_;
    std::map<NodeId, std::vector<int>> edges_of_group_;
    std::vector<std::vector<NodeId>> groups_on_slot_;

    std::map<NodeId, int> uplink_;
    std::map<NodeId, std::vector<int>> tree_children_;
    std::set<std::pair<int, NodeId>> pending_orient_, pending_ack_;
    std::set<std::pair<int, NodeId>> child_done_;

    struct UpStream {
        BitString buf;
        std::size_t cursor = 0;
    };
    std::map<NodeId, UpStream> up_;
    std::map<NodeId, std::map<int, FrameParser>> up_parsers_;
    std::map<NodeId, int> children_left_;

    struct DownStream {
        BitString buf;
        std::map<int, std::size_t> cursors;
    };
    std::map<NodeId, DownStream> down_;
    std::map<NodeId, FrameParser> down_in_;
    std::set<NodeId> down_done_;

    std::vector<BitString> final_records_;
};

class CollectProgram final : public NodeProgram {
public:
    CollectProgram(int f, NodeId gid, std::optional<BitString> payload,
                   std::vector<std::pair<NodeId, NodeId>> tags, int payload_bits, int bandwidth_bits) {
        logic_.configure(f, gid, std::move(payload), std::move(tags), payload_bits, bandwidth_bits);
    }
    void init(const NodeContext& ctx) override { logic_.init(ctx); }
    void send(int round, MessageVec& out) override { logic_.send(round, out); }
    void receive(int round, const MessageVec& in) override {
        logic_.receive(round, in);
        if (round == logic_.total_rounds()) done_ = true;
    }
    bool halted() const override { return done_; }
    BitString output() const override { return BitString{}; }

    CollectLogic& logic() { return logic_; }

private:
    CollectLogic logic_;
    bool done_ = false;
};

std::unique_ptr<detail::CollectStage> detail::make_collect_stage(
    int f, NodeId gid, std::optional<BitString> payload,
    std::vector<std::pair<NodeId, NodeId>> tags, int payload_bits, int bandwidth_bits) {
    auto p = std::make_unique<CollectLogic>();
    p->configure(f, gid, std::move(payload), std::move(tags), payload_bits, bandwidth_bits);
    return p;
}

std::vector<std::unique_ptr<NodeProgram>> make_collect_programs(
    const Graph& g, const PartitionResult& pr, int f,
    const std::vector<std::optional<BitString>>& payloads, int payload_bits, int bandwidth_bits) {
    const int n = g.node_count();
    if (static_cast<int>(payloads.size()) != n)
        throw InvalidParams("make_collect_programs: payload vector size mismatch");
    std::vector<std::vector<std::pair<NodeId, NodeId>>> tags(static_cast<std::size_t>(n));
    for (const auto& he : pr.shortcut_edges) {
        tags[static_cast<std::size_t>(g.index_of(he.from))].push_back({he.to, he.group});
        tags[static_cast<std::size_t>(g.index_of(he.to))].push_back({he.from, he.group});
    }
    std::vector<std::unique_ptr<NodeProgram>> out;
    for (int i = 0; i < n; ++i)
        out.push_back(std::make_unique<CollectProgram>(f, pr.group_of[static_cast<std::size_t>(i)],
                                                       payloads[static_cast<std::size_t>(i)],
                                                       tags[static_cast<std::size_t>(i)], payload_bits,
                                                       bandwidth_bits));
    return out;
}

std::vector<std::pair<NodeId, std::optional<BitString>>> collected_records(
    const std::vector<std::unique_ptr<NodeProgram>>& programs, int dense_index) {
    auto* p = dynamic_cast<CollectProgram*>(programs[static_cast<std::size_t>(dense_index)].get());
    if (!p) throw InvalidParams("collected_records: not a collect program");
    return p->logic().records();
}

} // namespace relab
