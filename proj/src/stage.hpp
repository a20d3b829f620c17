#ifndef RELAB_SRC_STAGE_HPP
#define RELAB_SRC_STAGE_HPP

#include <memory>
#include <optional>
#include <vector>

#include "relab/congest.hpp"
#include "relab/partition.hpp"
#include "relab/restore.hpp"

namespace relab::detail {

// Stage-local views of the node programs, so the full scheme can run all
// stages back to back inside a single engine execution. Rounds passed to
// send/receive are stage-relative and 1-based.

class RestoreStage {
public:
    virtual ~RestoreStage() = default;
    virtual void init(const NodeContext& ctx) = 0;
    virtual int total_rounds() const = 0;
    virtual void send(int rel, MessageVec& out) = 0;
    virtual void receive(int rel, const MessageVec& in) = 0;
    virtual bool b_final() const = 0;
};
std::unique_ptr<RestoreStage> make_restore_stage(int f, std::optional<Zeta> zeta,
                                                 const FieldWidths& w);

class PartitionStage {
public:
    virtual ~PartitionStage() = default;
    virtual void init(const NodeContext& ctx) = 0;
    virtual int total_rounds() const = 0;
    virtual void send(int rel, MessageVec& out) = 0;
    virtual void receive(int rel, const MessageVec& in) = 0;
    virtual NodeId group() const = 0;
    virtual NodeId leader() const = 0;
    virtual std::optional<NodeId> parent_id() const = 0;
    virtual const std::vector<HEdge>& h_sent() const = 0;
    /// (neighbor id, group) routing tags, both directions of every H edge.
    virtual std::vector<std::pair<NodeId, NodeId>> tag_ids() const = 0;
};
std::unique_ptr<PartitionStage> make_partition_stage(int f, bool in_s, const FieldWidths& w);

class CollectStage {
public:
    virtual ~CollectStage() = default;
    virtual void init(const NodeContext& ctx) = 0;
    virtual int total_rounds() const = 0;
    virtual void send(int rel, MessageVec& out) = 0;
    virtual void receive(int rel, const MessageVec& in) = 0;
    virtual std::vector<std::pair<NodeId, std::optional<BitString>>> records() const = 0;
};
std::unique_ptr<CollectStage> make_collect_stage(int f, NodeId gid, std::optional<BitString> payload,
                                                 std::vector<std::pair<NodeId, NodeId>> tags,
                                                 int payload_bits, int bandwidth_bits);

} // namespace relab::detail

#endif
