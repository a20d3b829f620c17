#ifndef RELAB_IO_HPP
#define RELAB_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "relab/oracle.hpp"
#include "relab/partition.hpp"
#include "relab/rulingset.hpp"
#include "relab/scheme.hpp"

namespace relab {

// Graph text format: first line "n m", then m lines "u v" (decimal IDs).
// The writer emits edges in canonical sorted order with u < v.
void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);
Graph read_graph_file(const std::string& path);

// Labeling file: header "n ell", then one line "ID hexbits" per node in
// increasing ID order, hex padded to whole nibbles.
void write_labeling(std::ostream& os, const Graph& g, const Labeling& phi);
Labeling read_labeling(std::istream& is, const Graph& g);

// Resilient labeling file: header "n f dist_bits", then "ID nbits hexbits"
// per node, with "ID -" for erased entries.
void write_resilient(std::ostream& os, const Graph& g, const ResilientLabeling& rl);
ResilientLabeling read_resilient(std::istream& is, const Graph& g);

// Ruling set dump: one line per node, "ID b distS", in increasing ID order.
void write_ruling_dump(std::ostream& os, const Graph& g, const RulingSet& rs);
RulingSet read_ruling_dump(std::istream& is, const Graph& g, int f);

// Partition dump: one line per node "ID group leader tree_parent" (parent
// 0 for roots), then one line "H u v group" per shortcut edge.
void write_partition_dump(std::ostream& os, const Graph& g, const PartitionResult& pr);
PartitionResult read_partition_dump(std::istream& is, const Graph& g);

// Sweep report CSV. First line is "# schema <id>", then the header row and
// one row per cell in canonical order.
extern const char* kSweepCsvSchema;
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Per-(F, ell) mean-rounds series, suitable for plotting scaling shapes.
void write_sweep_series(std::ostream& os, const std::vector<SweepRow>& rows);

} // namespace relab

#endif
