#include "relab/congest.hpp"

#include <algorithm>

#include "relab/errors.hpp"

namespace relab {

RunResult run(const Graph& g, std::span<NodeProgram* const> programs, const SimConfig& cfg) {
    const int n = g.node_count();
    if (static_cast<int>(programs.size()) != n)
        throw InvalidParams("run: need exactly one program per node");
    if (cfg.bandwidth_bits < 1) throw InvalidParams("run: bandwidth must be >= 1");

    for (int i = 0; i < n; ++i) {
        NodeContext ctx;
        ctx.self = g.id_at(i);
        ctx.neighbors = g.neighbors(ctx.self);
        programs[static_cast<std::size_t>(i)]->init(ctx);
    }

    // slot index of node i in neighbor j's inbox
    std::vector<std::vector<int>> slot_at_peer(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        slot_at_peer[static_cast<std::size_t>(i)].resize(g.adj(i).size());
        for (std::size_t a = 0; a < g.adj(i).size(); ++a) {
            int j = g.adj(i)[a];
            const auto& back = g.adj(j);
            auto it = std::lower_bound(back.begin(), back.end(), i);
            slot_at_peer[static_cast<std::size_t>(i)][a] = static_cast<int>(it - back.begin());
        }
    }

    RunMetrics metrics;
    std::vector<MessageVec> inbox(static_cast<std::size_t>(n));
    std::vector<MessageVec> outbox(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        inbox[static_cast<std::size_t>(i)].resize(g.adj(i).size());
        outbox[static_cast<std::size_t>(i)].resize(g.adj(i).size());
    }

    auto all_halted = [&] {
        for (int i = 0; i < n; ++i)
            if (!programs[static_cast<std::size_t>(i)]->halted()) return false;
        return true;
    };

    int round = 0;
    while (!all_halted()) {
        if (round >= cfg.max_rounds)
            throw MaxRoundsExceeded("run: exceeded " + std::to_string(cfg.max_rounds) + " rounds");
        ++round;
        for (int i = 0; i < n; ++i) {
            auto& out = outbox[static_cast<std::size_t>(i)];
            std::fill(out.begin(), out.end(), std::nullopt);
            NodeProgram* p = programs[static_cast<std::size_t>(i)];
            if (p->halted()) continue;
            try {
                p->send(round, out);
            } catch (const Error&) {
                throw;
            } catch (const std::exception& e) {
                throw ProgramFault("node " + std::to_string(g.id_at(i)) + " round " +
                                   std::to_string(round) + ": " + e.what());
            }
            for (std::size_t a = 0; a < out.size(); ++a) {
                if (!out[a]) continue;
                int bits = static_cast<int>(out[a]->size());
                if (bits > cfg.bandwidth_bits)
                    throw BandwidthExceeded("node " + std::to_string(g.id_at(i)) + " -> " +
                                            std::to_string(g.id_at(g.adj(i)[a])) + " round " +
                                            std::to_string(round) + ": " + std::to_string(bits) +
                                            " bits > B=" + std::to_string(cfg.bandwidth_bits));
                metrics.peak_edge_bits = std::max(metrics.peak_edge_bits, bits);
                ++metrics.total_messages;
            }
        }
        // deliver
        for (int i = 0; i < n; ++i)
            std::fill(inbox[static_cast<std::size_t>(i)].begin(), inbox[static_cast<std::size_t>(i)].end(),
                      std::nullopt);
        for (int i = 0; i < n; ++i) {
            const auto& out = outbox[static_cast<std::size_t>(i)];
            for (std::size_t a = 0; a < out.size(); ++a) {
                if (!out[a]) continue;
                int j = g.adj(i)[a];
                inbox[static_cast<std::size_t>(j)][static_cast<std::size_t>(slot_at_peer[static_cast<std::size_t>(i)][a])] =
                    out[a];
                if (cfg.trace)
                    (*cfg.trace) << round << ' ' << g.id_at(i) << "->" << g.id_at(j) << ' '
                                 << out[a]->size() << ' ' << out[a]->to_hex() << '\n';
            }
        }
        for (int i = 0; i < n; ++i) {
            NodeProgram* p = programs[static_cast<std::size_t>(i)];
            if (p->halted()) continue;
            try {
                p->receive(round, inbox[static_cast<std::size_t>(i)]);
            } catch (const Error&) {
                throw;
            } catch (const std::exception& e) {
                throw ProgramFault("node " + std::to_string(g.id_at(i)) + " round " +
                                   std::to_string(round) + ": " + e.what());
            }
        }
    }

    RunResult result;
    result.metrics = metrics;
    result.metrics.rounds_used = round;
    result.outputs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) result.outputs.push_back(programs[static_cast<std::size_t>(i)]->output());
    return result;
}

int default_bandwidth(int n, int f) {
    if (n < 2) throw InvalidParams("default_bandwidth: n must be >= 2");
    if (f < 1) throw InvalidParams("default_bandwidth: f must be >= 1");
    return ceil_log2(static_cast<std::uint64_t>(n)) + ceil_log2(static_cast<std::uint64_t>(2 * f + 2)) + 8;
}

FieldWidths field_widths(int bandwidth_bits, int f) {
    FieldWidths w;
    w.dist_bits = ceil_log2(static_cast<std::uint64_t>(2 * f + 2));
    w.id_bits = bandwidth_bits - w.dist_bits - 8;
    if (w.id_bits < 1)
        throw InvalidParams("bandwidth too small for protocol messages");
    return w;
}

int default_max_rounds(int n, int f, int ell, int bandwidth_bits) {
    (void)n;
    long long smax = 3LL * f + 1;
    long long guard = 64LL * (f + 1) + 8LL * ((smax * ell * 80 + bandwidth_bits - 1) / bandwidth_bits);
    return static_cast<int>(guard);
}

} // namespace relab
