#ifndef RELAB_PARTITION_HPP
#define RELAB_PARTITION_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "relab/congest.hpp"
#include "relab/graph.hpp"
#include "relab/rulingset.hpp"

namespace relab {

/// One group span produced by ComputeGroups: children at positions
/// start..end of order(u) (1-based; end may be r_u+1, meaning u itself).
/// `group` is the ID of the first child in the span that still had
/// ungrouped nodes, which makes the identifier a member of its own group.
struct GroupSpec {
    int start = 0;
    int end = 0;
    NodeId group = 0;
};

/// Result of the pure ComputeGroups procedure at one node.
struct ComputeGroupsResult {
    std::vector<GroupSpec> groups;
    std::vector<std::pair<int, NodeId>> messages; // (child position, group id)
    int remain = 0;                               // ungrouped nodes left in the subtree
    std::optional<NodeId> self_group;             // set iff u itself was grouped
};

/// Counter loop over order(u) = (children sorted by increasing ID, then u):
/// accumulate remains until the count reaches f+1, emit a group, reset.
/// A member of S with at least one group absorbs its leftover into the last
/// group. remain is 0 when u grouped itself, otherwise leftover sum plus 1.
ComputeGroupsResult compute_groups_local_ids(bool in_s, const std::vector<NodeId>& child_ids,
                                             const std::vector<int>& remains, int f);

/// Same with child IDs 1, 2, ... (counter-arithmetic traces).
ComputeGroupsResult compute_groups_local(bool in_s, const std::vector<int>& remains, int f);

/// Messages RelayGroups(u, group) sends: (i, group) for every child position
/// in (last_group_end, r_u] whose remain is positive.
std::vector<std::pair<int, NodeId>> relay_groups_local(NodeId group, int last_group_end,
                                                       const std::vector<int>& remains);

/// A shortcut edge: `from` sent group id `group` over edge (from, to).
struct HEdge {
    NodeId from = 0, to = 0;
    NodeId group = 0;
    friend bool operator==(const HEdge&, const HEdge&) = default;
    friend auto operator<=>(const HEdge&, const HEdge&) = default;
};

struct PartitionResult {
    std::vector<NodeId> group_of;                 // dense index -> group id
    std::vector<NodeId> leader;                   // dense index -> BFS tree root
    std::vector<std::optional<NodeId>> tree_parent; // dense index; empty for roots
    std::vector<HEdge> shortcut_edges;            // sorted

    NodeId group_at(const Graph& g, NodeId v) const {
        return group_of[static_cast<std::size_t>(g.index_of(v))];
    }
    /// gid -> sorted member ids.
    std::map<NodeId, std::vector<NodeId>> groups(const Graph& g) const;

    friend bool operator==(const PartitionResult&, const PartitionResult&) = default;
};

/// Sequential simulation of the distributed partitioning: BFS forest from S
/// (first wave wins, ties to the smaller root ID), bottom-up ComputeGroups,
/// top-down RelayGroups, then the root-remainder resolution. Bit-for-bit
/// identical to the node-program execution.
PartitionResult partition_centralized(const Graph& g, const RulingSet& rs, int f);

/// Checks disjoint cover, f+1 <= |Q| <= 3f+1, identifier-names-a-member,
/// per-edge subgraph membership <= 2, and connectivity with diameter <= 4f
/// of every G[Q] plus its shortcuts.
VerifyReport verify_partition(const Graph& g, const PartitionResult& pr, int f);

// ---------------------------------------------------------------------------
// Node programs
// ---------------------------------------------------------------------------

/// Fixed round schedule for the partitioning program: five phases of 2f+2
/// rounds (BFS forest, remain convergecast, group downcast, group-id
/// upcast, root-remainder downcast).
int partition_round_total(int f);
std::vector<Phase> partition_phases(int f, int start_round = 1);

class PartitionProgram; // defined in partition.cpp

/// Per-node programs executing the partitioning given each node's ruling
/// set bit. Indexed like g dense indices.
std::vector<std::unique_ptr<NodeProgram>> make_partition_programs(const Graph& g, int f,
                                                                  const std::vector<char>& in_s,
                                                                  int bandwidth_bits);

/// Collects the distributed outcome (requires programs from
/// make_partition_programs after a run).
PartitionResult collect_partition_outputs(const Graph& g,
                                          const std::vector<std::unique_ptr<NodeProgram>>& programs);

// ---------------------------------------------------------------------------
// Intra-group information exchange (pipelined collection)
// ---------------------------------------------------------------------------

/// Fixed schedule for group collection: announce (1 round), orientation
/// flood, pipelined convergecast, pipelined broadcast. payload_bits is the
/// fixed per-record payload width Y.
struct CollectSchedule {
    int announce = 1;
    int orient = 0;
    int converge = 0;
    int broadcast = 0;
    int record_bits = 0; // id + present flag + length field + payload
    int total() const { return announce + orient + converge + broadcast; }
};
CollectSchedule collect_schedule(int f, int payload_bits, int bandwidth_bits);

/// Per-node programs for intra-group exchange over G[Q] plus shortcut
/// edges: after the run every node holds the (id, payload) of every member
/// of its group. Payloads shorter than payload_bits are zero-padded and
/// carry their true length; absent payloads are transported as absent.
std::vector<std::unique_ptr<NodeProgram>> make_collect_programs(
    const Graph& g, const PartitionResult& pr, int f,
    const std::vector<std::optional<BitString>>& payloads, int payload_bits, int bandwidth_bits);

/// Records gathered by one node (requires programs from
/// make_collect_programs after a run): (member id, payload) sorted by id;
/// absent payload means the member declared none.
std::vector<std::pair<NodeId, std::optional<BitString>>> collected_records(
    const std::vector<std::unique_ptr<NodeProgram>>& programs, int dense_index);

} // namespace relab

#endif
