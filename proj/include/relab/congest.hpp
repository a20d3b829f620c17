#ifndef RELAB_CONGEST_HPP
#define RELAB_CONGEST_HPP

#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "relab/bits.hpp"
#include "relab/graph.hpp"

namespace relab {

/// What a node knows at start: itself, its neighbor IDs (sorted increasing)
/// and its private input. Nothing global beyond parameters baked into the
/// program by its factory.
struct NodeContext {
    NodeId self = 0;
    std::vector<NodeId> neighbors;
};

/// Per-neighbor message slots, indexed like NodeContext::neighbors.
using MessageVec = std::vector<std::optional<BitString>>;

/// A synchronous message-passing node program.
///
/// Each round r >= 1 the engine calls send(r) on every node, enforces the
/// per-edge bandwidth on every produced message, delivers, then calls
/// receive(r, inbox) on every node. A message sent in round r is received
/// in round r (the standard synchronous model: a flood started in round 1
/// covers distance d by round d). Behavior must be a pure function of the
/// context, local input and messages received so far.
class NodeProgram {
public:
    virtual ~NodeProgram() = default;
    virtual void init(const NodeContext& ctx) = 0;
    virtual void send(int round, MessageVec& out) = 0;
    virtual void receive(int round, const MessageVec& in) = 0;
    virtual bool halted() const = 0;
    virtual BitString output() const = 0;
};

struct SimConfig {
    int bandwidth_bits = 32;
    int max_rounds = 1 << 20;
    std::ostream* trace = nullptr; // one line per delivered message if set
};

/// One entry of a published phase schedule: [start, start+length) rounds.
struct Phase {
    std::string name;
    int start = 1;
    int length = 0;
};

struct RunMetrics {
    int rounds_used = 0;
    int peak_edge_bits = 0;
    long long total_messages = 0;
    std::vector<Phase> phases; // published schedule, when the program has one
};

struct RunResult {
    std::vector<BitString> outputs; // by dense node index
    RunMetrics metrics;
};

/// Executes programs[i] on the node with dense index i until all halt or
/// cfg.max_rounds is exceeded. Deterministic: nodes are processed in
/// increasing ID order, message slots are per directed edge per round.
RunResult run(const Graph& g, std::span<NodeProgram* const> programs, const SimConfig& cfg);

/// Default per-edge bandwidth: an ID field of ceil(log2 n) bits (IDs are
/// transported as value-1), a distance field of ceil(log2(2f+2)) bits and
/// 8 control bits. Every single protocol message of this suite fits.
int default_bandwidth(int n, int f);

/// Field widths implied by a bandwidth choice. Protocol messages are laid
/// out as tag(8) | id(id_bits) | aux(dist_bits), zero-filled when unused.
struct FieldWidths {
    int id_bits = 0;
    int dist_bits = 0;
};
FieldWidths field_widths(int bandwidth_bits, int f);

/// Runaway guard for full scheme runs.
int default_max_rounds(int n, int f, int ell, int bandwidth_bits);

} // namespace relab

#endif
