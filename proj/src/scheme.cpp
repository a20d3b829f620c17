#include "relab/scheme.hpp"

#include <algorithm>
#include <set>

#include "relab/errors.hpp"
#include "stage.hpp"

namespace relab {

AdversaryKind adversary_kind_from_string(const std::string& s) {
    if (s == "random_k" || s == "random") return AdversaryKind::random_k;
    if (s == "consecutive_on_path" || s == "consecutive") return AdversaryKind::consecutive_on_path;
    if (s == "near_ruling_set") return AdversaryKind::near_ruling_set;
    if (s == "exhaustive") return AdversaryKind::exhaustive;
    if (s == "explicit" || s == "explicit_set") return AdversaryKind::explicit_set;
    throw InvalidParams("unknown adversary: " + s);
}

std::string to_string(AdversaryKind k) {
    switch (k) {
        case AdversaryKind::random_k: return "random_k";
        case AdversaryKind::consecutive_on_path: return "consecutive_on_path";
        case AdversaryKind::near_ruling_set: return "near_ruling_set";
        case AdversaryKind::exhaustive: return "exhaustive";
        case AdversaryKind::explicit_set: return "explicit";
    }
    return "?";
}

std::uint64_t exhaustive_count(int n, int budget) {
    std::uint64_t total = 0, c = 1;
    for (int k = 0; k <= budget && k <= n; ++k) {
        total += c;
        c = c * static_cast<std::uint64_t>(n - k) / static_cast<std::uint64_t>(k + 1);
    }
    return total;
}

namespace {

// index-th subset of size <= budget (sizes enumerated ascending, within a
// size lexicographic over sorted node ids)
std::vector<NodeId> unrank_subset(const std::vector<NodeId>& ids, int budget, std::uint64_t index) {
    const int n = static_cast<int>(ids.size());
    auto choose = [](int n_, int k_) {
        std::uint64_t c = 1;
        for (int i = 0; i < k_; ++i) c = c * static_cast<std::uint64_t>(n_ - i) / static_cast<std::uint64_t>(i + 1);
        return c;
    };
    int k = 0;
    while (k <= budget) {
        std::uint64_t c = choose(n, k);
        if (index < c) break;
        index -= c;
        ++k;
    }
    if (k > budget) throw InvalidParams("adversary index out of range");
    std::vector<NodeId> out;
    int lo = 0;
    for (int slot = 0; slot < k; ++slot) {
        for (int i = lo; i < n; ++i) {
            std::uint64_t c = choose(n - i - 1, k - slot - 1);
            if (index < c) {
                out.push_back(ids[static_cast<std::size_t>(i)]);
                lo = i + 1;
                break;
            }
            index -= c;
        }
    }
    return out;
}

std::vector<NodeId> path_order(const Graph& g) {
    NodeId start = 0;
    for (NodeId id : g.ids()) {
        auto nb = g.neighbors(id);
        if (nb.size() > 2) throw InvalidParams("consecutive_on_path: graph is not a path");
        if (nb.size() == 1 && start == 0) start = id;
    }
    if (start == 0) throw InvalidParams("consecutive_on_path: graph is not a path");
    std::vector<NodeId> order;
    NodeId prev = 0, cur = start;
    while (true) {
        order.push_back(cur);
        NodeId next = 0;
        for (NodeId nb : g.neighbors(cur))
            if (nb != prev) next = nb;
        if (next == 0) break;
        prev = cur;
        cur = next;
    }
    if (static_cast<int>(order.size()) != g.node_count())
        throw InvalidParams("consecutive_on_path: graph is not a path");
    return order;
}

} // namespace

std::vector<NodeId> Adversary::pick(const Graph& g, const RulingSet& rs, int budget) const {
    if (budget < 0) throw InvalidParams("adversary budget must be >= 0");
    switch (kind) {
        case AdversaryKind::random_k: {
            std::vector<NodeId> ids = g.ids();
            std::mt19937_64 rng(seed);
            for (std::size_t i = 0; i < ids.size() && i < static_cast<std::size_t>(budget); ++i) {
                std::size_t j = i + static_cast<std::size_t>(rng_below(rng, ids.size() - i));
                std::swap(ids[i], ids[j]);
            }
            ids.resize(std::min<std::size_t>(ids.size(), static_cast<std::size_t>(budget)));
            std::sort(ids.begin(), ids.end());
            return ids;
        }
        case AdversaryKind::consecutive_on_path: {
            std::vector<NodeId> order = path_order(g);
            int k = std::min(budget, static_cast<int>(order.size()));
            int start = (static_cast<int>(order.size()) - k) / 2;
            std::vector<NodeId> out(order.begin() + start, order.begin() + start + k);
            std::sort(out.begin(), out.end());
            return out;
        }
        case AdversaryKind::near_ruling_set: {
            std::vector<NodeId> out;
            std::set<NodeId> chosen;
            for (NodeId m : rs.members) {
                if (static_cast<int>(chosen.size()) >= budget) break;
                chosen.insert(m);
                if (static_cast<int>(chosen.size()) >= budget) break;
                auto nb = g.neighbors(m);
                if (!nb.empty()) chosen.insert(nb.front());
            }
            out.assign(chosen.begin(), chosen.end());
            return out;
        }
        case AdversaryKind::exhaustive:
            return unrank_subset(g.ids(), budget, index);
        case AdversaryKind::explicit_set: {
            if (static_cast<int>(explicit_nodes.size()) > budget)
                throw InvalidParams("explicit erasure set exceeds the adversary budget");
            std::vector<NodeId> out = explicit_nodes;
            for (NodeId v : out) (void)g.index_of(v);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    throw InvalidParams("unreachable adversary kind");
}

// ---------------------------------------------------------------------------
// Budgets
// ---------------------------------------------------------------------------

int scheme_record_bits(int F, int f_factor, int ell, int bandwidth_bits, const GroupCodec& codec) {
    const int f = f_factor * F;
    int maxblock = 0;
    for (int s = f + 1; s <= 3 * f + 1; ++s)
        maxblock = std::max(maxblock, codec.per_node_overhead(s, ell));
    return collect_schedule(f, maxblock, bandwidth_bits).record_bits;
}

int scheme_round_total(int n, int F, int f_factor, int ell, int bandwidth_bits,
                       const GroupCodec& codec) {
    (void)n;
    const int f = f_factor * F;
    int maxblock = 0;
    for (int s = f + 1; s <= 3 * f + 1; ++s)
        maxblock = std::max(maxblock, codec.per_node_overhead(s, ell));
    return restore_round_total(f) + partition_round_total(f) +
           collect_schedule(f, maxblock, bandwidth_bits).total();
}

int round_budget(int n, int F, int f_factor, int ell, int bandwidth_bits, const GroupCodec& codec) {
    (void)n;
    const int f = f_factor * F;
    const int rec = scheme_record_bits(F, f_factor, ell, bandwidth_bits, codec);
    const long long smax = 3LL * f + 1;
    const long long chunks = (smax * (rec + 1) + bandwidth_bits - 1) / bandwidth_bits;
    return restore_round_bound(f) + partition_round_total(f) +
           40 * (f + static_cast<int>(chunks)) + 64;
}

// ---------------------------------------------------------------------------
// The composite node program
// ---------------------------------------------------------------------------

namespace {

class SchemeProgram final : public NodeProgram {
public:
    SchemeProgram(int f, std::optional<BitString> psi, const LabelLayout& layout,
                  const GroupCodec* codec, int ell, int payload_bits, int bandwidth_bits)
        : f_(f), codec_(codec), ell_(ell), payload_bits_(payload_bits), bandwidth_(bandwidth_bits) {
        w_ = field_widths(bandwidth_bits, f);
        // Step: parse psi as b | distS | block (faulty nodes skip)
        if (psi) {
            ParsedLabel p = parse_label(*psi, layout);
            zeta_ = Zeta{p.b, p.dist_s};
            block_ = std::move(p.block);
        }
        restore_ = detail::make_restore_stage(f_, zeta_, w_);
        restore_end_ = restore_->total_rounds();
    }

    void init(const NodeContext& ctx) override {
        ctx_ = ctx;
        restore_->init(ctx);
    }

    void send(int round, MessageVec& out) override {
        if (round <= restore_end_) {
            if (round == 1) { /* restore stage already initialized */
            }
            restore_->send(round, out);
            return;
        }
        if (round <= partition_end_ || partition_end_ == 0) {
            if (!partition_) {
                partition_ = detail::make_partition_stage(f_, restore_->b_final(), w_);
                partition_->init(ctx_);
                partition_end_ = restore_end_ + partition_->total_rounds();
            }
            if (round <= partition_end_) {
                partition_->send(round - restore_end_, out);
                return;
            }
        }
        if (!collect_) {
            collect_ = detail::make_collect_stage(f_, partition_->group(), block_,
                                                  partition_->tag_ids(), payload_bits_, bandwidth_);
            collect_->init(ctx_);
            collect_end_ = partition_end_ + collect_->total_rounds();
        }
        collect_->send(round - partition_end_, out);
    }

    void receive(int round, const MessageVec& in) override {
        if (round <= restore_end_) {
            restore_->receive(round, in);
            return;
        }
        if (round <= partition_end_) {
            partition_->receive(round - restore_end_, in);
            return;
        }
        collect_->receive(round - partition_end_, in);
        if (round == collect_end_) {
            decode();
            done_ = true;
        }
    }

    bool halted() const override { return done_; }
    BitString output() const override { return recovered_; }

    bool restored_bit() const { return restore_->b_final(); }
    const detail::PartitionStage* partition_stage() const { return partition_.get(); }

private:
    void decode() {
        auto records = collect_->records();
        const int s = static_cast<int>(records.size());
        BlockVector bv;
        bv.s = s;
        std::vector<NodeId> ids;
        for (auto& [id, block] : records) {
            ids.push_back(id);
            bv.blocks.push_back(std::move(block));
        }
        try {
            auto labels = decode_group(*codec_, bv, ids, ell_);
            for (auto& [id, label] : labels)
                if (id == ctx_.self) recovered_ = std::move(label);
        } catch (const Error& e) {
            throw DecodeFailed("node " + std::to_string(ctx_.self) + ": " + e.what());
        }
        if (static_cast<int>(recovered_.size()) != ell_)
            throw DecodeFailed("node " + std::to_string(ctx_.self) + ": own label missing from group");
    }

    int f_;
    const GroupCodec* codec_;
    int ell_;
    int payload_bits_;
    int bandwidth_;
    FieldWidths w_;
    NodeContext ctx_;

    std::optional<Zeta> zeta_;
    std::optional<BitString> block_;

    std::unique_ptr<detail::RestoreStage> restore_;
    std::unique_ptr<detail::PartitionStage> partition_;
    std::unique_ptr<detail::CollectStage> collect_;
    int restore_end_ = 0;
    int partition_end_ = 0;
    int collect_end_ = 0;

    BitString recovered_;
    bool done_ = false;
};

} // namespace

SchemeResult run_scheme(const Graph& g, int F, const Labeling& phi, const GroupCodec& codec,
                        int f_factor, const Adversary& adv, int bandwidth_bits,
                        std::ostream* trace) {
    const int f = f_factor * F;
    OracleOutput oracle = assign_labels(g, F, phi, codec, f_factor);

    SchemeResult result;
    result.erased = adv.pick(g, oracle.ruling_set, F);
    result.overhead = oracle.overhead;

    std::vector<std::optional<BitString>> psi = oracle.psi.psi;
    for (NodeId v : result.erased) psi[static_cast<std::size_t>(g.index_of(v))].reset();

    const int B = bandwidth_bits > 0 ? bandwidth_bits : default_bandwidth(g.node_count(), f);
    result.bandwidth_bits = B;
    result.round_budget = round_budget(g.node_count(), F, f_factor, phi.ell, B, codec);
    FieldWidths w = field_widths(B, f);
    for (NodeId id : g.ids())
        if (bitwidth(id - 1) > w.id_bits)
            throw InvalidParams("node id " + std::to_string(id) +
                                " does not fit the bandwidth's id field; raise the bandwidth");

    int maxblock = 0;
    for (int s = f + 1; s <= 3 * f + 1; ++s)
        maxblock = std::max(maxblock, codec.per_node_overhead(s, phi.ell));

    std::vector<std::unique_ptr<SchemeProgram>> programs;
    std::vector<NodeProgram*> raw;
    for (int i = 0; i < g.node_count(); ++i) {
        programs.push_back(std::make_unique<SchemeProgram>(f, psi[static_cast<std::size_t>(i)],
                                                           oracle.psi.layout, &codec, phi.ell,
                                                           maxblock, B));
        raw.push_back(programs.back().get());
    }

    SimConfig cfg;
    cfg.bandwidth_bits = B;
    cfg.max_rounds = scheme_round_total(g.node_count(), F, f_factor, phi.ell, B, codec) + 8;
    cfg.trace = trace;
    RunResult run_result = run(g, raw, cfg);

    result.metrics = run_result.metrics;
    result.metrics.phases = restore_phases(f, 1);
    for (const Phase& p : partition_phases(f, restore_round_total(f) + 1))
        result.metrics.phases.push_back(p);
    {
        CollectSchedule cs = collect_schedule(f, maxblock, B);
        int at = restore_round_total(f) + partition_round_total(f) + 1;
        result.metrics.phases.push_back({"collect.announce", at, cs.announce});
        result.metrics.phases.push_back({"collect.orient", at + cs.announce, cs.orient});
        result.metrics.phases.push_back({"collect.converge", at + cs.announce + cs.orient, cs.converge});
        result.metrics.phases.push_back(
            {"collect.broadcast", at + cs.announce + cs.orient + cs.converge, cs.broadcast});
    }

    // stage verdicts against the oracle's ground truth
    result.verdict.restore = true;
    for (int i = 0; i < g.node_count(); ++i) {
        bool want = oracle.ruling_set.dist_to_s[static_cast<std::size_t>(i)] == 0;
        if (programs[static_cast<std::size_t>(i)]->restored_bit() != want) result.verdict.restore = false;
    }
    {
        PartitionResult dist;
        dist.group_of.resize(static_cast<std::size_t>(g.node_count()));
        dist.leader.resize(static_cast<std::size_t>(g.node_count()));
        dist.tree_parent.resize(static_cast<std::size_t>(g.node_count()));
        for (int i = 0; i < g.node_count(); ++i) {
            const auto* ps = programs[static_cast<std::size_t>(i)]->partition_stage();
            dist.group_of[static_cast<std::size_t>(i)] = ps->group();
            dist.leader[static_cast<std::size_t>(i)] = ps->leader();
            dist.tree_parent[static_cast<std::size_t>(i)] = ps->parent_id();
            for (const auto& he : ps->h_sent()) dist.shortcut_edges.push_back(he);
        }
        std::sort(dist.shortcut_edges.begin(), dist.shortcut_edges.end());
        dist.shortcut_edges.erase(std::unique(dist.shortcut_edges.begin(), dist.shortcut_edges.end()),
                                  dist.shortcut_edges.end());
        result.verdict.partition = (dist == oracle.partition);
    }
    result.recovered.ell = phi.ell;
    result.recovered.bits = run_result.outputs;
    result.verdict.decode = true;
    for (int i = 0; i < g.node_count(); ++i)
        if (!(result.recovered.bits[static_cast<std::size_t>(i)] == phi.bits[static_cast<std::size_t>(i)]))
            result.verdict.decode = false;
    return result;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

std::string GraphSpec::label() const {
    std::string s = to_string(kind);
    switch (kind) {
        case GraphKind::grid: s += ":" + std::to_string(params.rows) + "x" + std::to_string(params.cols); break;
        case GraphKind::intro_gadget: s += ":f" + std::to_string(params.f); break;
        default: s += ":" + std::to_string(params.n); break;
    }
    if (kind == GraphKind::random_tree || kind == GraphKind::gnp_connected)
        s += ":s" + std::to_string(seed);
    return s;
}

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
    std::vector<SweepRow> rows;
    for (const GraphSpec& gs : cfg.graphs) {
        Graph g = generate(gs.kind, gs.params, gs.seed);
        for (int F : cfg.Fs)
            for (int f_factor : cfg.f_factors)
                for (int ell : cfg.ells)
                    for (const std::string& codec_name : cfg.codecs)
                        for (AdversaryKind ak : cfg.adversaries)
                            for (std::uint64_t seed : cfg.seeds) {
                                SweepRow row;
                                row.graph = gs.label();
                                row.n = g.node_count();
                                row.F = F;
                                row.f = f_factor * F;
                                row.ell = ell;
                                row.codec = codec_name;
                                row.adversary = to_string(ak);
                                row.seed = seed;
                                try {
                                    auto codec = make_codec(codec_name, F);
                                    Labeling phi = random_labeling(g, ell, seed ^ 0x9e3779b97f4a7c15ULL);
                                    Adversary adv;
                                    adv.kind = ak;
                                    adv.seed = seed;
                                    int B = cfg.bandwidth_override;
                                    SchemeResult sr = run_scheme(g, F, phi, *codec, f_factor, adv, B);
                                    row.rounds = sr.metrics.rounds_used;
                                    row.budget = sr.round_budget;
                                    row.max_label_bits = sr.overhead.max_label_bits;
                                    row.pass = sr.verdict.pass() && sr.metrics.rounds_used <= sr.round_budget;
                                } catch (const std::exception& e) {
                                    row.pass = false;
                                    row.error = e.what();
                                }
                                rows.push_back(row);
                            }
    }
    return rows;
}

} // namespace relab
