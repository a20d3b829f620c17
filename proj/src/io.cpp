#include "relab/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "relab/errors.hpp"

namespace relab {

namespace {

// zero-length strings still print one hex digit; the declared bit count wins
std::string hex_of(const BitString& b) { return b.empty() ? std::string("0") : b.to_hex(); }

BitString bits_from_hex(const std::string& hex, std::size_t nbits) {
    BitString out;
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else
            throw ParseError("invalid hex digit");
        out.append_uint(static_cast<std::uint64_t>(v), 4);
    }
    if (out.size() < nbits) throw ParseError("hex string shorter than declared bit count");
    return out.slice(0, nbits);
}

std::istringstream line_stream(std::istream& is, const char* what) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError(std::string("unexpected end of file reading ") + what);
    return std::istringstream(line);
}

} // namespace

void write_graph(std::ostream& os, const Graph& g) {
    os << g.node_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& is) {
    auto head = line_stream(is, "graph header");
    long long n, m;
    if (!(head >> n >> m)) throw ParseError("graph header must be 'n m'");
    if (n < 1 || m < 0) throw ParseError("graph header out of range");
    std::vector<Edge> edges;
    std::vector<NodeId> nodes;
    for (long long i = 0; i < m; ++i) {
        auto ls = line_stream(is, "edge");
        unsigned long long u, v;
        if (!(ls >> u >> v)) throw ParseError("edge line must be 'u v'");
        if (u == 0 || v == 0) throw ParseError("node IDs must be positive");
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
        nodes.push_back(static_cast<NodeId>(u));
        nodes.push_back(static_cast<NodeId>(v));
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (n == 1 && m == 0) nodes.push_back(1); // the single-node graph
    if (static_cast<long long>(nodes.size()) != n)
        throw ParseError("edge list names " + std::to_string(nodes.size()) + " nodes, header says " +
                         std::to_string(n));
    return Graph(std::move(nodes), edges);
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    return read_graph(in);
}

void write_labeling(std::ostream& os, const Graph& g, const Labeling& phi) {
    os << g.node_count() << ' ' << phi.ell << '\n';
    for (int i = 0; i < g.node_count(); ++i)
        os << g.id_at(i) << ' ' << hex_of(phi.bits[static_cast<std::size_t>(i)]) << '\n';
}

Labeling read_labeling(std::istream& is, const Graph& g) {
    auto head = line_stream(is, "labeling header");
    int n, ell;
    if (!(head >> n >> ell) || ell < 0) throw ParseError("labeling header must be 'n ell'");
    if (n != g.node_count()) throw ParseError("labeling node count does not match graph");
    Labeling phi;
    phi.ell = ell;
    phi.bits.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto ls = line_stream(is, "label");
        unsigned long long id;
        std::string hex;
        if (!(ls >> id >> hex)) throw ParseError("label line must be 'ID hexbits'");
        phi.bits[static_cast<std::size_t>(g.index_of(static_cast<NodeId>(id)))] =
            bits_from_hex(hex, static_cast<std::size_t>(ell));
    }
    return phi;
}

void write_resilient(std::ostream& os, const Graph& g, const ResilientLabeling& rl) {
    os << g.node_count() << ' ' << rl.layout.f << ' ' << rl.layout.dist_bits << '\n';
    for (int i = 0; i < g.node_count(); ++i) {
        const auto& p = rl.psi[static_cast<std::size_t>(i)];
        if (p)
            os << g.id_at(i) << ' ' << p->size() << ' ' << hex_of(*p) << '\n';
        else
            os << g.id_at(i) << " -\n";
    }
}

ResilientLabeling read_resilient(std::istream& is, const Graph& g) {
    auto head = line_stream(is, "resilient header");
    int n, f, dist_bits;
    if (!(head >> n >> f >> dist_bits)) throw ParseError("resilient header must be 'n f dist_bits'");
    if (n != g.node_count()) throw ParseError("resilient node count does not match graph");
    ResilientLabeling rl;
    rl.layout.f = f;
    rl.layout.dist_bits = dist_bits;
    rl.psi.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto ls = line_stream(is, "resilient label");
        unsigned long long id;
        std::string field;
        if (!(ls >> id >> field)) throw ParseError("resilient line must be 'ID nbits hexbits' or 'ID -'");
        int idx = g.index_of(static_cast<NodeId>(id));
        if (field == "-") continue;
        std::size_t nbits = std::stoul(field);
        std::string hex;
        if (!(ls >> hex)) throw ParseError("resilient line missing hexbits");
        rl.psi[static_cast<std::size_t>(idx)] = bits_from_hex(hex, nbits);
    }
    return rl;
}

void write_ruling_dump(std::ostream& os, const Graph& g, const RulingSet& rs) {
    for (int i = 0; i < g.node_count(); ++i) {
        NodeId id = g.id_at(i);
        os << id << ' ' << (rs.contains(g, id) ? 1 : 0) << ' '
           << rs.dist_to_s[static_cast<std::size_t>(i)] << '\n';
    }
}

RulingSet read_ruling_dump(std::istream& is, const Graph& g, int f) {
    RulingSet rs;
    rs.f = f;
    rs.dist_to_s.assign(static_cast<std::size_t>(g.node_count()), -1);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        unsigned long long id;
        int b, d;
        if (!(ls >> id >> b >> d)) throw ParseError("ruling dump line must be 'ID b distS'");
        int idx = g.index_of(static_cast<NodeId>(id));
        rs.dist_to_s[static_cast<std::size_t>(idx)] = d;
        if (b) rs.members.push_back(static_cast<NodeId>(id));
    }
    for (int i = 0; i < g.node_count(); ++i)
        if (rs.dist_to_s[static_cast<std::size_t>(i)] < 0)
            throw ParseError("ruling dump misses node " + std::to_string(g.id_at(i)));
    std::sort(rs.members.begin(), rs.members.end());
    return rs;
}

void write_partition_dump(std::ostream& os, const Graph& g, const PartitionResult& pr) {
    for (int i = 0; i < g.node_count(); ++i) {
        os << g.id_at(i) << ' ' << pr.group_of[static_cast<std::size_t>(i)] << ' '
           << pr.leader[static_cast<std::size_t>(i)] << ' '
           << (pr.tree_parent[static_cast<std::size_t>(i)] ? *pr.tree_parent[static_cast<std::size_t>(i)] : 0)
           << '\n';
    }
    for (const auto& he : pr.shortcut_edges)
        os << "H " << he.from << ' ' << he.to << ' ' << he.group << '\n';
}

PartitionResult read_partition_dump(std::istream& is, const Graph& g) {
    PartitionResult pr;
    const int n = g.node_count();
    pr.group_of.assign(static_cast<std::size_t>(n), 0);
    pr.leader.assign(static_cast<std::size_t>(n), 0);
    pr.tree_parent.assign(static_cast<std::size_t>(n), std::nullopt);
    std::string line;
    int seen = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == 'H') {
            char h;
            unsigned long long u, v, grp;
            if (!(ls >> h >> u >> v >> grp)) throw ParseError("H line must be 'H u v group'");
            pr.shortcut_edges.push_back(
                {static_cast<NodeId>(u), static_cast<NodeId>(v), static_cast<NodeId>(grp)});
            continue;
        }
        unsigned long long id, grp, leader, parent;
        if (!(ls >> id >> grp >> leader >> parent))
            throw ParseError("partition line must be 'ID group leader tree_parent'");
        int idx = g.index_of(static_cast<NodeId>(id));
        pr.group_of[static_cast<std::size_t>(idx)] = static_cast<NodeId>(grp);
        pr.leader[static_cast<std::size_t>(idx)] = static_cast<NodeId>(leader);
        if (parent != 0) pr.tree_parent[static_cast<std::size_t>(idx)] = static_cast<NodeId>(parent);
        ++seen;
    }
    if (seen != n) throw ParseError("partition dump misses nodes");
    std::sort(pr.shortcut_edges.begin(), pr.shortcut_edges.end());
    return pr;
}

const char* kSweepCsvSchema = "relab-sweep-v1";

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "# schema " << kSweepCsvSchema << '\n';
    os << "graph,n,F,f,ell,codec,adversary,seed,rounds,budget,max_label_bits,pass\n";
    for (const auto& r : rows) {
        os << r.graph << ',' << r.n << ',' << r.F << ',' << r.f << ',' << r.ell << ',' << r.codec << ','
           << r.adversary << ',' << r.seed << ',' << r.rounds << ',' << r.budget << ','
           << r.max_label_bits << ',' << (r.pass ? 1 : 0) << '\n';
    }
}

void write_sweep_series(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "# schema relab-series-v1\n";
    os << "F,ell,cells,mean_rounds\n";
    std::map<std::pair<int, int>, std::pair<long long, int>> acc;
    for (const auto& r : rows) {
        auto& [sum, count] = acc[{r.F, r.ell}];
        sum += r.rounds;
        ++count;
    }
    for (const auto& [key, sc] : acc) {
        double mean = sc.second ? static_cast<double>(sc.first) / sc.second : 0.0;
        os << key.first << ',' << key.second << ',' << sc.second << ',' << mean << '\n';
    }
}

} // namespace relab
