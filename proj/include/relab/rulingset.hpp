#ifndef RELAB_RULINGSET_HPP
#define RELAB_RULINGSET_HPP

#include <string>
#include <vector>

#include "relab/graph.hpp"

namespace relab {

/// A (2f+2, 2f+1)-ruling set: members pairwise at distance >= 2f+2, every
/// node within distance <= 2f+1 of some member. dist_to_s is exact.
struct RulingSet {
    int f = 0;
    std::vector<NodeId> members;  // sorted increasing
    std::vector<int> dist_to_s;   // by dense index of the graph it was built on

    bool contains(const Graph& g, NodeId v) const;
    int distS(const Graph& g, NodeId v) const { return dist_to_s[static_cast<std::size_t>(g.index_of(v))]; }
};

struct Violation {
    std::string property;
    std::string detail;
};

struct VerifyReport {
    bool ok = true;
    std::vector<Violation> violations;

    void fail(std::string property, std::string detail) {
        ok = false;
        violations.push_back({std::move(property), std::move(detail)});
    }
};

/// Scans nodes in increasing ID order; each non-excluded node joins S and
/// excludes its radius-(2f+1) ball. dist_to_s comes from a multi-source BFS.
RulingSet greedy_ruling_set(const Graph& g, int f);

/// Checks separation (>= 2f+2), domination (<= 2f+1), exact dist_to_s and
/// membership consistency. Violations are reported, not thrown.
VerifyReport verify_ruling_set(const Graph& g, const RulingSet& rs);

/// True iff dist(u,v) <= f and at most f-2 nodes q of
/// B_{f+1}(v) ∪ B_{f+1}(u) have dist(q,v) != dist(q,u). The count ranges
/// over u and v themselves, so it is always >= 2 for u != v.
bool is_alternative(const Graph& g, NodeId v, NodeId u, int f);

/// True iff no member v has a non-member alternative node u with
/// ID(u) < ID(v). Exhaustive scan over member/non-member pairs.
bool check_lemma_greedy(const Graph& g, const RulingSet& rs, int f);

} // namespace relab

#endif
