#include "relab/restore.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "relab/errors.hpp"
#include "stage.hpp"
#include "wire.hpp"

namespace relab {

int restore_round_total(int f) { return (2 * f + 1) + (3 * f + 1) + (2 * f + 2) + (2 * f + 2) + 2 * f; }

int restore_round_bound(int f) { return restore_round_total(f) + 8; }

std::vector<Phase> restore_phases(int f, int start_round) {
    std::vector<Phase> ph;
    int at = start_round;
    auto push = [&](const char* name, int len) {
        ph.push_back({name, at, len});
        at += len;
    };
    push("restore.one", 2 * f + 1);
    push("restore.ids", 3 * f + 1);
    push("restore.dist", 2 * f + 2);
    push("restore.echo", 2 * f + 2);
    push("restore.min", 2 * f);
    return ph;
}

/// Node-local state machine for the ruling-set restore. Queued floods are
/// drained one message per edge per round, smallest (distance, id) first.
class RestoreLogic final : public detail::RestoreStage {
public:
    void configure(int f, std::optional<Zeta> zeta, const FieldWidths& w) {
        f_ = f;
        zeta_ = zeta;
        w_ = w;
        if (zeta_) {
            b_ = zeta_->b; // Step 1: non-faulty nodes keep their input bit
            decided_step_ = 1;
        }
    }

    void init(const NodeContext& ctx) override {
        self_ = ctx.self;
        nbr_ = ctx.neighbors;
        queues_.assign(nbr_.size(), {});
    }

    int total_rounds() const override { return restore_round_total(f_); }

    void send(int rel, MessageVec& out) override {
        auto [phase, pr] = phase_of(rel);
        if (pr == 1) enter_phase(phase);
        for (std::size_t a = 0; a < nbr_.size(); ++a) {
            auto& q = queues_[a];
            while (!q.empty()) {
                auto [key, tag, id] = *q.begin();
                auto d6 = dist6_.find(id);
                if (tag == wire::RESTORE_DIST && d6 != dist6_.end() && key.first > d6->second) {
                    q.erase(q.begin()); // superseded by a closer copy
                    continue;
                }
                out[a] = wire::pack(static_cast<wire::Tag>(tag), id, static_cast<std::uint64_t>(key.first), w_);
                q.erase(q.begin());
                break;
            }
        }
    }

    void receive(int rel, const MessageVec& in) override {
        auto [phase, pr] = phase_of(rel);
        switch (phase) {
            case 2: {
                bool got = false;
                for (const auto& m : in)
                    if (m && wire::peek_tag(*m) == wire::RESTORE_ONE) got = true;
                if (!got) break;
                if (faulty()) decide(false, 3); // Step 3
                if (!forwarded_one_ && pr < 2 * f_ + 1) {
                    forwarded_one_ = true;
                    broadcast(wire::RESTORE_ONE, 0, 0);
                }
                break;
            }
            case 4: {
                // min hops per id among this round's arrivals
                std::map<NodeId, int> best;
                for (const auto& m : in) {
                    if (!m || wire::peek_tag(*m) != wire::RESTORE_ID) continue;
                    auto f4 = wire::unpack(*m, w_);
                    int est = static_cast<int>(f4.aux) + 1;
                    auto it = best.find(f4.id);
                    if (it == best.end() || est < it->second) best[f4.id] = est;
                }
                for (const auto& [id, est] : best) {
                    if (id != self_) heard4_.insert(id);
                    if (!forwarded4_.count(id)) {
                        forwarded4_.insert(id);
                        if (est < 2 * f_ + 1) broadcast(wire::RESTORE_ID, id, est);
                    }
                }
                // Step 5: no other faulty node within 2f+1
                if (pr == 3 * f_ + 1 && faulty() && heard4_.empty()) decide(true, 5);
                break;
            }
            case 6: {
                std::map<NodeId, int> best;
                for (const auto& m : in) {
                    if (!m || wire::peek_tag(*m) != wire::RESTORE_DIST) continue;
                    auto f6 = wire::unpack(*m, w_);
                    int est = static_cast<int>(f6.aux) + 1;
                    auto it = best.find(f6.id);
                    if (it == best.end() || est < it->second) best[f6.id] = est;
                }
                for (const auto& [id, est] : best) {
                    auto it = dist6_.find(id);
                    if (it != dist6_.end() && it->second <= est) continue;
                    dist6_[id] = est; // improvement: propagate the smaller value
                    if (est < f_ + 1) broadcast(wire::RESTORE_DIST, id, est);
                }
                break;
            }
            case 7: {
                std::map<NodeId, int> best;
                for (const auto& m : in) {
                    if (!m || wire::peek_tag(*m) != wire::RESTORE_ECHO) continue;
                    auto f7 = wire::unpack(*m, w_);
                    int est = static_cast<int>(f7.aux) + 1;
                    auto it = best.find(f7.id);
                    if (it == best.end() || est < it->second) best[f7.id] = est;
                }
                for (const auto& [id, est] : best) {
                    if (id == self_ && faulty()) decide(false, 8); // Step 8
                    if (!forwarded7_.count(id)) {
                        forwarded7_.insert(id);
                        if (est < f_ + 1) broadcast(wire::RESTORE_ECHO, id, est);
                    }
                }
                break;
            }
            case 9: {
                std::map<NodeId, int> best;
                for (const auto& m : in) {
                    if (!m || wire::peek_tag(*m) != wire::RESTORE_X) continue;
                    auto f9 = wire::unpack(*m, w_);
                    int est = static_cast<int>(f9.aux) + 1;
                    auto it = best.find(f9.id);
                    if (it == best.end() || est < it->second) best[f9.id] = est;
                }
                for (const auto& [id, est] : best) {
                    if (id != self_) x_.insert(id);
                    if (!forwarded9_.count(id)) {
                        forwarded9_.insert(id);
                        if (est < f_) broadcast(wire::RESTORE_X, id, est);
                    }
                }
                if (rel == total_rounds() && faulty()) {
                    // Step 10: smallest faulty ID within the final flood wins
                    bool smallest = x_.empty() || self_ < *x_.begin();
                    decide(smallest, 10);
                }
                break;
            }
            default: break;
        }
    }

    bool b_final() const override { return b_.value_or(false); }

    RestoreDebug debug() const {
        RestoreDebug d;
        d.originally_faulty = !zeta_.has_value();
        d.b = b_final();
        d.decided_step = decided_step_;
        d.x_set.assign(x_.begin(), x_.end());
        for (const auto& [id, dist] : dist6_) d.dist6.push_back({id, dist});
        return d;
    }

private:
    bool faulty() const { return !b_.has_value(); }

    void decide(bool value, int step) {
        b_ = value;
        decided_step_ = step;
    }

    // (phase number, round within phase)
    std::pair<int, int> phase_of(int rel) const {
        int lens[5] = {2 * f_ + 1, 3 * f_ + 1, 2 * f_ + 2, 2 * f_ + 2, 2 * f_};
        int steps[5] = {2, 4, 6, 7, 9};
        int at = rel;
        for (int k = 0; k < 5; ++k) {
            if (at <= lens[k]) return {steps[k], at};
            at -= lens[k];
        }
        return {0, 0};
    }

    void enter_phase(int phase) {
        for (auto& q : queues_) q.clear(); // stale floods never cross a phase boundary
        switch (phase) {
            case 2:
                if (!faulty() && zeta_->b) {
                    forwarded_one_ = true;
                    broadcast(wire::RESTORE_ONE, 0, 0);
                }
                break;
            case 4:
                if (faulty()) {
                    forwarded4_.insert(self_);
                    broadcast(wire::RESTORE_ID, self_, 0);
                }
                break;
            case 6:
                if (faulty()) {
                    dist6_[self_] = 0;
                    broadcast(wire::RESTORE_DIST, self_, 0);
                }
                break;
            case 7:
                // Step 7 is evaluated on the stabilized distances
                if (!zeta_) break;
                for (const auto& [id, dist] : dist6_) {
                    if (id == self_) continue;
                    if (dist <= f_ + 1 && zeta_->dist_s != dist) {
                        forwarded7_.insert(id);
                        broadcast(wire::RESTORE_ECHO, id, 0);
                    }
                }
                break;
            case 9:
                if (faulty()) {
                    forwarded9_.insert(self_);
                    broadcast(wire::RESTORE_X, self_, 0);
                }
                break;
            default: break;
        }
    }

    void broadcast(wire::Tag tag, NodeId id, int value) {
        for (auto& q : queues_) q.insert({{value, id}, tag, id});
    }

    int f_ = 0;
    std::optional<Zeta> zeta_;
    FieldWidths w_;
    NodeId self_ = 0;
    std::vector<NodeId> nbr_;

    std::optional<bool> b_;
    int decided_step_ = 0;

    struct QueueItem {
        std::pair<int, NodeId> key; // (distance value, id): smallest first
        int tag;
        NodeId id;
        friend auto operator<=>(const QueueItem&, const QueueItem&) = default;
    };
    std::vector<std::set<QueueItem>> queues_; // per neighbor slot

    bool forwarded_one_ = false;
    std::set<NodeId> forwarded4_, forwarded7_, forwarded9_;
    std::set<NodeId> heard4_;
    std::map<NodeId, int> dist6_;
    std::set<NodeId> x_;

    friend class RestoreProgram;
};

class RestoreProgram final : public NodeProgram {
public:
    RestoreProgram(int f, std::optional<Zeta> zeta, const FieldWidths& w) {
        logic_.configure(f, zeta, w);
    }
    void init(const NodeContext& ctx) override { logic_.init(ctx); }
    void send(int round, MessageVec& out) override { logic_.send(round, out); }
    void receive(int round, const MessageVec& in) override {
        logic_.receive(round, in);
        if (round == logic_.total_rounds()) done_ = true;
    }
    bool halted() const override { return done_; }
    BitString output() const override {
        BitString b;
        b.push_back(logic_.b_final());
        return b;
    }

    RestoreLogic& logic() { return logic_; }

private:
    RestoreLogic logic_;
    bool done_ = false;
};

std::vector<std::unique_ptr<NodeProgram>> make_restore_programs(
    const Graph& g, int f, const std::vector<std::optional<Zeta>>& zeta, int bandwidth_bits) {
    if (static_cast<int>(zeta.size()) != g.node_count())
        throw InvalidParams("make_restore_programs: zeta size mismatch");
    FieldWidths w = field_widths(bandwidth_bits, f);
    for (NodeId id : g.ids())
        if (bitwidth(id - 1) > w.id_bits)
            throw InvalidParams("node id " + std::to_string(id) + " does not fit the bandwidth's id field");
    std::vector<std::unique_ptr<NodeProgram>> out;
    for (int i = 0; i < g.node_count(); ++i)
        out.push_back(std::make_unique<RestoreProgram>(f, zeta[static_cast<std::size_t>(i)], w));
    return out;
}

std::unique_ptr<detail::RestoreStage> detail::make_restore_stage(int f, std::optional<Zeta> zeta,
                                                                 const FieldWidths& w) {
    auto p = std::make_unique<RestoreLogic>();
    p->configure(f, zeta, w);
    return p;
}

RestoreDebug restore_debug(const std::vector<std::unique_ptr<NodeProgram>>& programs, int dense_index) {
    auto* p = dynamic_cast<RestoreProgram*>(programs[static_cast<std::size_t>(dense_index)].get());
    if (!p) throw InvalidParams("restore_debug: not a restore program");
    return p->logic().debug();
}

} // namespace relab
