#ifndef RELAB_GENERATE_HPP
#define RELAB_GENERATE_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "relab/graph.hpp"

namespace relab {

/// Parameters for graph generation. Unused fields are ignored per kind.
struct GenParams {
    int n = 0;       // path, cycle, random_tree, gnp_connected
    int rows = 0;    // grid
    int cols = 0;    // grid
    double p = 0.0;  // gnp_connected
    int f = 0;       // intro_gadget
    int tail = 0;    // intro_gadget: extra path nodes hanging off w_0
};

enum class GraphKind { path, cycle, grid, random_tree, gnp_connected, intro_gadget };

GraphKind graph_kind_from_string(const std::string& s);
std::string to_string(GraphKind k);

/// Deterministic generator: identical (kind, params, seed) give identical
/// graphs. gnp_connected resamples until connected (at most 1000 draws).
Graph generate(GraphKind kind, const GenParams& params, std::uint64_t seed = 0);

/// The hard-instance gadget: path w_0..w_{2f+1}, nodes u and v attached to
/// w_{2f+1}, an optional tail path attached to w_0, and IDs chosen so that
/// ID(v) < ID(w_0) < ID(u).
struct GadgetIds {
    NodeId v, w0, w_last, u;
};
GadgetIds intro_gadget_ids(int f);

enum class RelabelStrategy { sequential, random_perm };

/// Isomorphic copy with new IDs: sequential renames to 1..n in increasing
/// old-ID order; random_perm applies a seeded random permutation of 1..n.
Graph relabel_ids(const Graph& g, RelabelStrategy strategy, std::uint64_t seed = 0);

/// Isomorphic copy under an explicit old->new bijection.
Graph relabel_ids(const Graph& g, const std::map<NodeId, NodeId>& mapping);

/// Uniform value in [0, bound) from the engine, via rejection sampling.
/// Unlike std::uniform_int_distribution, results are reproducible across
/// standard library implementations.
std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound);

} // namespace relab

#endif
