#include "relab/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "relab/errors.hpp"
#include "relab/generate.hpp"

namespace relab {

Labeling random_labeling(const Graph& g, int ell, std::uint64_t seed) {
    if (ell < 0) throw InvalidParams("labeling: ell must be >= 0");
    Labeling phi;
    phi.ell = ell;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < g.node_count(); ++i) {
        BitString b;
        for (int j = 0; j < ell; ++j) b.push_back(rng_below(rng, 2) != 0);
        phi.bits.push_back(std::move(b));
    }
    return phi;
}

int ResilientLabeling::max_label_bits() const {
    int m = 0;
    for (const auto& p : psi)
        if (p) m = std::max(m, static_cast<int>(p->size()));
    return m;
}

BitString pack_label(bool b, int dist_s, const BitString& block, const LabelLayout& layout) {
    if (dist_s < 0 || dist_s > 2 * layout.f + 1)
        throw InvalidParams("pack_label: distS out of range");
    BitString out;
    out.push_back(b);
    out.append_uint(static_cast<std::uint64_t>(dist_s), layout.dist_bits);
    out.append(block);
    return out;
}

ParsedLabel parse_label(const BitString& psi_v, const LabelLayout& layout) {
    if (static_cast<int>(psi_v.size()) < 1 + layout.dist_bits)
        throw TooShort("parse_label: label shorter than its fixed fields");
    ParsedLabel p;
    p.b = psi_v.get(0);
    p.dist_s = static_cast<int>(psi_v.read_uint(1, layout.dist_bits));
    p.block = psi_v.slice(1 + static_cast<std::size_t>(layout.dist_bits),
                          psi_v.size() - 1 - static_cast<std::size_t>(layout.dist_bits));
    return p;
}

OracleOutput assign_labels(const Graph& g, int F, const Labeling& phi, const GroupCodec& codec,
                           int f_factor) {
    if (F < 1) throw InvalidParams("assign_labels: F must be >= 1");
    if (f_factor < 1) throw InvalidParams("assign_labels: f_factor must be >= 1");
    const int f = f_factor * F;
    if (g.node_count() < f + 1) throw GraphTooSmall("assign_labels: need n >= f+1");
    if (static_cast<int>(phi.bits.size()) != g.node_count())
        throw InvalidParams("assign_labels: labeling size mismatch");
    for (int s = f + 1; s <= 3 * f + 1; ++s)
        if (!codec.tolerates(s, F))
            throw IntolerantCodec("assign_labels: codec " + codec.name() +
                                  " cannot tolerate F=" + std::to_string(F) + " at group size " +
                                  std::to_string(s));

    OracleOutput out;
    out.ruling_set = greedy_ruling_set(g, f);
    out.partition = partition_centralized(g, out.ruling_set, f);

    out.psi.layout.f = f;
    out.psi.layout.dist_bits = ceil_log2(static_cast<std::uint64_t>(2 * f + 2));
    out.psi.psi.resize(static_cast<std::size_t>(g.node_count()));

    for (const auto& [gid, members] : out.partition.groups(g)) {
        std::vector<std::pair<NodeId, BitString>> labeled;
        for (NodeId v : members) labeled.push_back({v, phi.at(g, v)});
        BlockVector bv = encode_group(codec, labeled);
        for (std::size_t i = 0; i < members.size(); ++i) {
            int idx = g.index_of(members[i]);
            bool b = out.ruling_set.contains(g, members[i]);
            int ds = out.ruling_set.dist_to_s[static_cast<std::size_t>(idx)];
            out.psi.psi[static_cast<std::size_t>(idx)] = pack_label(b, ds, *bv.blocks[i], out.psi.layout);
        }
    }

    OverheadReport& re = out.overhead;
    re.ell = phi.ell;
    re.max_label_bits = out.psi.max_label_bits();
    re.b_add = 1 + out.psi.layout.dist_bits;
    if (phi.ell > 0) {
        long long num = re.max_label_bits - re.b_add;
        long long den = phi.ell;
        long long d = std::gcd(num, den);
        if (d > 0) {
            num /= d;
            den /= d;
        }
        re.a_num = num;
        re.a_den = den;
    }
    return out;
}

} // namespace relab
