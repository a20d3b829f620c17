#ifndef RELAB_CODEC_HPP
#define RELAB_CODEC_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relab/bits.hpp"
#include "relab/graph.hpp"

namespace relab {

// ---------------------------------------------------------------------------
// Justesen parameter arithmetic (used for overhead bounds, not for the
// default codec's wire format).
// ---------------------------------------------------------------------------

/// Exact rational, kept in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

struct JustesenParams {
    int M = 0;
    std::int64_t N_M = 0;        // 2 M (2^M - 1)
    Rational rho{1, 4};          // target rate
    std::int64_t k_M = 0;        // ceil(rho * N_M)
    Rational delta_floor{1, 20}; // guaranteed relative-distance lower bound
};

/// N_M = 2 M (2^M - 1).
std::int64_t justesen_N(int M);

/// Smallest M with ceil(rho * N_M) >= s.
JustesenParams choose_M(std::int64_t s, Rational rho = {1, 4});

/// ceil(N_M / s): the per-node bit count when a codeword of length N_M is
/// split into s blocks. At rho = 1/4 with M = choose_M(s) this is <= 80.
std::int64_t per_node_overhead_bound(const JustesenParams& params, std::int64_t s);

// ---------------------------------------------------------------------------
// Group-level erasure coding
// ---------------------------------------------------------------------------

/// One group's codeword, split into per-member blocks. An absent block is an
/// erasure; it is never represented as zeroed bits.
struct BlockVector {
    int s = 0;
    std::vector<std::optional<BitString>> blocks;

    int erased_count() const {
        int c = 0;
        for (const auto& b : blocks) c += b.has_value() ? 0 : 1;
        return c;
    }
};

/// Erasure-coding contract for one group. encode_column maps a column of s
/// bits (one per member, in ID order) to a codeword; the codeword is split
/// into s blocks of ceil(|w|/s) or floor(|w|/s) bits. Any implementation
/// must decode exactly when at most F blocks are erased and tolerates(s, F)
/// holds.
class GroupCodec {
public:
    virtual ~GroupCodec() = default;

    virtual std::string name() const = 0;
    /// Erasure budget this instance was configured for.
    virtual int budget() const = 0;
    virtual bool tolerates(int s, int F) const = 0;
    /// Codeword length in bits for a column of s bits.
    virtual int codeword_bits(int s) const = 0;
    /// Maximum per-node block bits for labels of ell bits.
    virtual int per_node_overhead(int s, int ell) const;

    virtual BitString encode_column(const BitString& column) const = 0;
    /// Recovers the s column bits from the codeword blocks (absent =
    /// erased). Block sizes must match the encode-time split.
    virtual BitString decode_column(const std::vector<std::optional<BitString>>& blocks) const = 0;
};

/// The baseline from the construction: the codeword repeats the column once
/// per block, so every block equals the column and any single survivor
/// decodes the group.
class RepetitionCodec final : public GroupCodec {
public:
    explicit RepetitionCodec(int budget = 1) : budget_(budget) {}
    std::string name() const override { return "repetition"; }
    int budget() const override { return budget_; }
    bool tolerates(int s, int F) const override { return s >= 1 && F >= 0 && F <= s - 1; }
    int codeword_bits(int s) const override { return s * s; }
    BitString encode_column(const BitString& column) const override;
    BitString decode_column(const std::vector<std::optional<BitString>>& blocks) const override;

private:
    int budget_;
};

/// Systematic MDS erasure code over GF(256). Per column, the s column bits
/// are packed into bytes and spread over c interleaved Reed-Solomon
/// codewords of s symbols each (evaluation points 0..s-1), so each block
/// carries exactly one symbol per codeword and F block erasures cost each
/// codeword exactly F symbols. Requires s <= 256.
class MdsCodec final : public GroupCodec {
public:
    explicit MdsCodec(int budget) : budget_(budget) {}
    std::string name() const override { return "mds"; }
    int budget() const override { return budget_; }
    bool tolerates(int s, int F) const override {
        return s >= 1 && s <= 256 && F >= 0 && F <= budget_ && budget_ < s;
    }
    /// Symbols per block: smallest c with c * (s - F) data bytes covering
    /// the ceil(s/8) packed column bytes.
    int symbols_per_block(int s) const;
    int codeword_bits(int s) const override { return 8 * s * symbols_per_block(s); }
    BitString encode_column(const BitString& column) const override;
    BitString decode_column(const std::vector<std::optional<BitString>>& blocks) const override;

private:
    int budget_;
};

std::unique_ptr<GroupCodec> make_codec(const std::string& name, int budget);

/// Splits `w` into s blocks of ceil(|w|/s) or floor(|w|/s) bits (larger
/// blocks first); the sizes sum to |w|.
std::vector<int> block_sizes(int codeword_bits, int s);

/// Column-wise group encoding: for each bit index j the j-th bits of all
/// labels (members in increasing ID order) form a column, the column is
/// encoded, the codeword is split into blocks, and member i's block is the
/// concatenation of its per-column pieces.
BlockVector encode_group(const GroupCodec& codec,
                         const std::vector<std::pair<NodeId, BitString>>& members);

/// Inverse of encode_group given at most `codec.budget()` erased blocks.
/// member_ids must be the encode-time order; ell is the label length.
std::vector<std::pair<NodeId, BitString>> decode_group(const GroupCodec& codec,
                                                       const BlockVector& bv,
                                                       const std::vector<NodeId>& member_ids,
                                                       int ell);

} // namespace relab

#endif
