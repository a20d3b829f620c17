#ifndef RELAB_SCHEME_HPP
#define RELAB_SCHEME_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relab/generate.hpp"
#include "relab/oracle.hpp"

namespace relab {

enum class AdversaryKind { random_k, consecutive_on_path, near_ruling_set, exhaustive, explicit_set };

AdversaryKind adversary_kind_from_string(const std::string& s);
std::string to_string(AdversaryKind k);

/// Chooses which labels get erased. |chosen set| <= budget always.
struct Adversary {
    AdversaryKind kind = AdversaryKind::random_k;
    std::uint64_t seed = 0;
    std::uint64_t index = 0; // which subset, for exhaustive
    std::vector<NodeId> explicit_nodes;

    std::vector<NodeId> pick(const Graph& g, const RulingSet& rs, int budget) const;
};

/// Number of subsets an exhaustive adversary of this budget enumerates.
std::uint64_t exhaustive_count(int n, int budget);

struct StageVerdict {
    bool restore = false;   // restored bits equal the greedy ruling set
    bool partition = false; // distributed partition equals the oracle's
    bool decode = false;    // recovered labeling equals phi bit for bit
    bool pass() const { return restore && partition && decode; }
};

struct SchemeResult {
    Labeling recovered;
    RunMetrics metrics;
    StageVerdict verdict;
    OverheadReport overhead;
    std::vector<NodeId> erased;
    int bandwidth_bits = 0;
    int round_budget = 0;
};

/// Exact master schedule a full scheme run follows (restore, partition,
/// collect stages back to back).
int scheme_round_total(int n, int F, int f_factor, int ell, int bandwidth_bits,
                       const GroupCodec& codec);

/// Published round budget: restore bound + partition schedule +
/// C * (f + ceil((3f+1) * record_bits / B)) + slack, C = 40, slack = 64.
/// Every run must finish within it.
int round_budget(int n, int F, int f_factor, int ell, int bandwidth_bits, const GroupCodec& codec);

/// Record width used by the scheme's block exchange (id, flag, length,
/// padded block).
int scheme_record_bits(int F, int f_factor, int ell, int bandwidth_bits, const GroupCodec& codec);

/// The full pipeline: oracle assignment, adversarial erasure, then one
/// engine run chaining parse, ruling-set restore, partitioning and the
/// group block exchange, and finally per-node decoding.
SchemeResult run_scheme(const Graph& g, int F, const Labeling& phi, const GroupCodec& codec,
                        int f_factor, const Adversary& adv, int bandwidth_bits = 0,
                        std::ostream* trace = nullptr);

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

struct GraphSpec {
    GraphKind kind = GraphKind::path;
    GenParams params;
    std::uint64_t seed = 0;

    std::string label() const;
};

struct SweepConfig {
    std::vector<GraphSpec> graphs;
    std::vector<int> Fs;
    std::vector<int> f_factors;
    std::vector<int> ells;
    std::vector<std::string> codecs;
    std::vector<AdversaryKind> adversaries;
    std::vector<std::uint64_t> seeds;
    int bandwidth_override = 0; // 0 = default_bandwidth(n, f)
};

struct SweepRow {
    std::string graph;
    int n = 0;
    int F = 0;
    int f = 0;
    int ell = 0;
    std::string codec;
    std::string adversary;
    std::uint64_t seed = 0;
    int rounds = 0;
    int budget = 0;
    int max_label_bits = 0;
    bool pass = false;
    std::string error; // empty unless the cell failed to run
};

/// Cartesian product of the configured ranges, executed cell by cell in
/// canonical order. Per-cell errors are recorded and the sweep continues.
std::vector<SweepRow> sweep(const SweepConfig& cfg);

} // namespace relab

#endif
