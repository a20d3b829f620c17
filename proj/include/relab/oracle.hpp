#ifndef RELAB_ORACLE_HPP
#define RELAB_ORACLE_HPP

#include <optional>
#include <random>
#include <vector>

#include "relab/codec.hpp"
#include "relab/graph.hpp"
#include "relab/partition.hpp"
#include "relab/rulingset.hpp"

namespace relab {

/// Uniform-length per-node labels; the opaque payload the scheme protects.
struct Labeling {
    int ell = 0;
    std::vector<BitString> bits; // by dense index

    const BitString& at(const Graph& g, NodeId v) const {
        return bits[static_cast<std::size_t>(g.index_of(v))];
    }
};

Labeling random_labeling(const Graph& g, int ell, std::uint64_t seed);

/// Fixed-offset layout of a transformed label:
/// b (1 bit) | distS (dist_bits wide) | codeword block.
struct LabelLayout {
    int f = 0;
    int dist_bits = 0; // ceil(log2(2f+2))
};

/// Transformed labels; an absent entry is an erased label.
struct ResilientLabeling {
    LabelLayout layout;
    std::vector<std::optional<BitString>> psi; // by dense index

    int max_label_bits() const;
};

struct ParsedLabel {
    bool b = false;
    int dist_s = 0;
    BitString block;
};

/// Multiplicative/additive label overhead actually achieved:
/// max |psi| <= A * ell + B_add with A = a_num/a_den.
struct OverheadReport {
    long long a_num = 0;
    long long a_den = 1;
    int b_add = 0;
    int ell = 0;
    int max_label_bits = 0;
};

struct OracleOutput {
    ResilientLabeling psi;
    PartitionResult partition;
    RulingSet ruling_set;
    OverheadReport overhead;
};

/// The oracle transformation: greedy (2f+2,2f+1)-ruling set with
/// f = f_factor * F, the deterministic partition, then per group the
/// column-wise encoding; psi(v) = b(v) | distS(v) | block(v).
OracleOutput assign_labels(const Graph& g, int F, const Labeling& phi, const GroupCodec& codec,
                           int f_factor);

BitString pack_label(bool b, int dist_s, const BitString& block, const LabelLayout& layout);
ParsedLabel parse_label(const BitString& psi_v, const LabelLayout& layout);

} // namespace relab

#endif
