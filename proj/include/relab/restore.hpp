#ifndef RELAB_RESTORE_HPP
#define RELAB_RESTORE_HPP

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "relab/congest.hpp"
#include "relab/graph.hpp"

namespace relab {

/// The ruling-set part of a label: membership bit and distance to S.
struct Zeta {
    bool b = false;
    int dist_s = 0;
};

/// Published schedule total for the restore algorithm:
/// (2f+1) + (3f+1) + (2f+2) + (2f+2) + 2f phases plus 8 rounds of slack.
int restore_round_bound(int f);
int restore_round_total(int f); // phases only, what the program actually uses
std::vector<Phase> restore_phases(int f, int start_round = 1);

/// Per-node programs restoring the greedy ruling set bit despite up to f
/// erased labels. zeta[i] is absent for faulty nodes. Each program's
/// output is the single restored bit.
std::vector<std::unique_ptr<NodeProgram>> make_restore_programs(
    const Graph& g, int f, const std::vector<std::optional<Zeta>>& zeta, int bandwidth_bits);

/// Debug view of one node's final protocol state.
struct RestoreDebug {
    bool originally_faulty = false;
    bool b = false;
    int decided_step = 0;            // 1, 3, 5, 8 or 10
    std::vector<NodeId> x_set;       // IDs heard in the final flood
    std::vector<std::pair<NodeId, int>> dist6; // (faulty id, stabilized distance)
};
RestoreDebug restore_debug(const std::vector<std::unique_ptr<NodeProgram>>& programs, int dense_index);

} // namespace relab

#endif
