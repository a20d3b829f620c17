#include "relab/codec.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "relab/errors.hpp"

namespace relab {

namespace gf256 {

// GF(2^8) with reduction polynomial x^8+x^4+x^3+x^2+1 (0x11d), generator 2.
struct Tables {
    std::array<std::uint8_t, 512> exp{};
    std::array<int, 256> log{};
    Tables() {
        int x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x);
            log[static_cast<std::size_t>(x)] = i;
            x <<= 1;
            if (x & 0x100) x ^= 0x11d;
        }
        for (int i = 255; i < 512; ++i) exp[static_cast<std::size_t>(i)] = exp[static_cast<std::size_t>(i - 255)];
        log[0] = -1;
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    const Tables& t = tables();
    return t.exp[static_cast<std::size_t>(t.log[a] + t.log[b])];
}

inline std::uint8_t inv(std::uint8_t a) {
    const Tables& t = tables();
    return t.exp[static_cast<std::size_t>(255 - t.log[a])];
}

inline std::uint8_t div(std::uint8_t a, std::uint8_t b) { return mul(a, inv(b)); }

/// Evaluates the interpolation polynomial through (xs[j], ys[j]) at each
/// point of `at` (which must be disjoint from xs). Barycentric form: weights
/// once per call, O(k) per evaluation.
std::vector<std::uint8_t> interpolate_at(const std::vector<std::uint8_t>& xs,
                                         const std::vector<std::uint8_t>& ys,
                                         const std::vector<std::uint8_t>& at) {
    const std::size_t k = xs.size();
    std::vector<std::uint8_t> w(k, 1);
    for (std::size_t j = 0; j < k; ++j) {
        std::uint8_t prod = 1;
        for (std::size_t m = 0; m < k; ++m)
            if (m != j) prod = mul(prod, static_cast<std::uint8_t>(xs[j] ^ xs[m]));
        w[j] = inv(prod);
    }
    std::vector<std::uint8_t> out;
    out.reserve(at.size());
    for (std::uint8_t x : at) {
        std::uint8_t lx = 1;
        for (std::size_t m = 0; m < k; ++m) lx = mul(lx, static_cast<std::uint8_t>(x ^ xs[m]));
        std::uint8_t acc = 0;
        for (std::size_t j = 0; j < k; ++j)
            acc = static_cast<std::uint8_t>(acc ^ div(mul(ys[j], w[j]), static_cast<std::uint8_t>(x ^ xs[j])));
        out.push_back(mul(lx, acc));
    }
    return out;
}

} // namespace gf256

// ---------------------------------------------------------------------------
// Justesen parameter arithmetic
// ---------------------------------------------------------------------------

std::int64_t justesen_N(int M) {
    if (M < 1 || M > 40) throw InvalidParams("justesen_N: M out of range");
    return 2LL * M * ((1LL << M) - 1);
}

JustesenParams choose_M(std::int64_t s, Rational rho) {
    if (s < 1) throw InvalidParams("choose_M: s must be >= 1");
    if (rho.num <= 0 || rho.den <= 0 || 2 * rho.num >= rho.den)
        throw InvalidParams("choose_M: rho must be in (0, 1/2)");
    for (int M = 1; M <= 40; ++M) {
        std::int64_t N = justesen_N(M);
        std::int64_t k = (rho.num * N + rho.den - 1) / rho.den; // ceil(rho * N)
        if (k >= s) {
            JustesenParams p;
            p.M = M;
            p.N_M = N;
            p.rho = rho;
            p.k_M = k;
            return p;
        }
    }
    throw InvalidParams("choose_M: s too large");
}

std::int64_t per_node_overhead_bound(const JustesenParams& params, std::int64_t s) {
    if (s < 1) throw InvalidParams("per_node_overhead_bound: s must be >= 1");
    return (params.N_M + s - 1) / s;
}

// ---------------------------------------------------------------------------
// Codecs
// ---------------------------------------------------------------------------

int GroupCodec::per_node_overhead(int s, int ell) const {
    int per_column = (codeword_bits(s) + s - 1) / s;
    return ell * per_column;
}

BitString RepetitionCodec::encode_column(const BitString& column) const {
    const int s = static_cast<int>(column.size());
    BitString w;
    for (int i = 0; i < s; ++i) w.append(column);
    return w;
}

BitString RepetitionCodec::decode_column(const std::vector<std::optional<BitString>>& blocks) const {
    const int s = static_cast<int>(blocks.size());
    for (const auto& b : blocks) {
        if (!b) continue;
        if (static_cast<int>(b->size()) != s)
            throw CorruptBlockSize("repetition: block size " + std::to_string(b->size()) +
                                   ", expected " + std::to_string(s));
        return *b;
    }
    throw TooManyErasures("repetition: all blocks erased");
}

int MdsCodec::symbols_per_block(int s) const {
    if (s < 1 || s > 256) throw InvalidParams("mds: s must be in 1..256");
    int k = s - budget_;
    if (k < 1) throw IntolerantCodec("mds: budget " + std::to_string(budget_) +
                                     " leaves no data symbols for s=" + std::to_string(s));
    int packed = (s + 7) / 8;
    return (packed + k - 1) / k;
}

BitString MdsCodec::encode_column(const BitString& column) const {
    const int s = static_cast<int>(column.size());
    const int c = symbols_per_block(s);
    const int k = s - budget_;
    // pack the s column bits into bytes, MSB first, zero-padded
    std::vector<std::uint8_t> data(static_cast<std::size_t>(c) * static_cast<std::size_t>(k), 0);
    for (int i = 0; i < s; ++i)
        if (column.get(static_cast<std::size_t>(i)))
            data[static_cast<std::size_t>(i / 8)] |= static_cast<std::uint8_t>(0x80u >> (i % 8));

    // symbol matrix: sym[t][i] for codeword t at evaluation point i
    std::vector<std::vector<std::uint8_t>> sym(static_cast<std::size_t>(c),
                                               std::vector<std::uint8_t>(static_cast<std::size_t>(s), 0));
    std::vector<std::uint8_t> xs(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) xs[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    std::vector<std::uint8_t> parity_points;
    for (int x = k; x < s; ++x) parity_points.push_back(static_cast<std::uint8_t>(x));
    for (int t = 0; t < c; ++t) {
        std::vector<std::uint8_t> ys(data.begin() + static_cast<std::ptrdiff_t>(t) * k,
                                     data.begin() + static_cast<std::ptrdiff_t>(t + 1) * k);
        for (int i = 0; i < k; ++i) sym[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] = ys[static_cast<std::size_t>(i)];
        if (!parity_points.empty()) {
            auto par = gf256::interpolate_at(xs, ys, parity_points);
            for (int x = k; x < s; ++x)
                sym[static_cast<std::size_t>(t)][static_cast<std::size_t>(x)] = par[static_cast<std::size_t>(x - k)];
        }
    }
    BitString w;
    for (int i = 0; i < s; ++i)
        for (int t = 0; t < c; ++t) w.append_uint(sym[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)], 8);
    return w;
}

BitString MdsCodec::decode_column(const std::vector<std::optional<BitString>>& blocks) const {
    const int s = static_cast<int>(blocks.size());
    const int c = symbols_per_block(s);
    const int k = s - budget_;
    std::vector<int> present;
    for (int i = 0; i < s; ++i)
        if (blocks[static_cast<std::size_t>(i)]) {
            if (static_cast<int>(blocks[static_cast<std::size_t>(i)]->size()) != 8 * c)
                throw CorruptBlockSize("mds: block " + std::to_string(i) + " has " +
                                       std::to_string(blocks[static_cast<std::size_t>(i)]->size()) +
                                       " bits, expected " + std::to_string(8 * c));
            present.push_back(i);
        }
    if (static_cast<int>(present.size()) < k)
        throw TooManyErasures("mds: only " + std::to_string(present.size()) + " of " +
                              std::to_string(s) + " blocks present, need " + std::to_string(k));

    std::vector<std::uint8_t> data(static_cast<std::size_t>(c) * static_cast<std::size_t>(k), 0);
    std::vector<std::uint8_t> xs;
    for (int j = 0; j < k; ++j) xs.push_back(static_cast<std::uint8_t>(present[static_cast<std::size_t>(j)]));
    std::vector<std::uint8_t> erased_points;
    std::vector<char> have(static_cast<std::size_t>(s), 0);
    for (int i : present) have[static_cast<std::size_t>(i)] = 1;
    for (int i = 0; i < k; ++i)
        if (!have[static_cast<std::size_t>(i)]) erased_points.push_back(static_cast<std::uint8_t>(i));

    for (int t = 0; t < c; ++t) {
        std::vector<std::uint8_t> ys;
        ys.reserve(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
            int i = present[static_cast<std::size_t>(j)];
            ys.push_back(static_cast<std::uint8_t>(
                blocks[static_cast<std::size_t>(i)]->read_uint(static_cast<std::size_t>(8 * t), 8)));
        }
        // known data symbols come straight from present blocks
        for (int i = 0; i < k; ++i)
            if (have[static_cast<std::size_t>(i)])
                data[static_cast<std::size_t>(t) * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)] =
                    static_cast<std::uint8_t>(
                        blocks[static_cast<std::size_t>(i)]->read_uint(static_cast<std::size_t>(8 * t), 8));
        if (!erased_points.empty()) {
            auto rec = gf256::interpolate_at(xs, ys, erased_points);
            for (std::size_t e = 0; e < erased_points.size(); ++e)
                data[static_cast<std::size_t>(t) * static_cast<std::size_t>(k) + erased_points[e]] = rec[e];
        }
    }
    BitString column;
    for (int i = 0; i < s; ++i)
        column.push_back((data[static_cast<std::size_t>(i / 8)] >> (7 - i % 8)) & 1u);
    return column;
}

std::unique_ptr<GroupCodec> make_codec(const std::string& name, int budget) {
    if (name == "repetition") return std::make_unique<RepetitionCodec>(budget);
    if (name == "mds") return std::make_unique<MdsCodec>(budget);
    throw InvalidParams("unknown codec: " + name);
}

// ---------------------------------------------------------------------------
// Group encode/decode
// ---------------------------------------------------------------------------

std::vector<int> block_sizes(int codeword_bits, int s) {
    std::vector<int> sizes(static_cast<std::size_t>(s));
    int q = codeword_bits / s, r = codeword_bits % s;
    for (int i = 0; i < s; ++i) sizes[static_cast<std::size_t>(i)] = q + (i < r ? 1 : 0);
    return sizes;
}

BlockVector encode_group(const GroupCodec& codec,
                         const std::vector<std::pair<NodeId, BitString>>& members) {
    const int s = static_cast<int>(members.size());
    if (s < 1) throw InvalidParams("encode_group: empty group");
    for (int i = 1; i < s; ++i)
        if (members[static_cast<std::size_t>(i - 1)].first >= members[static_cast<std::size_t>(i)].first)
            throw UnsortedMembers("encode_group: members must be sorted by increasing ID");
    const int ell = static_cast<int>(members[0].second.size());
    for (const auto& [id, label] : members)
        if (static_cast<int>(label.size()) != ell)
            throw LengthMismatch("encode_group: label of node " + std::to_string(id) +
                                 " has wrong length");
    if (!codec.tolerates(s, codec.budget()))
        throw IntolerantCodec("encode_group: codec " + codec.name() + " cannot tolerate " +
                              std::to_string(codec.budget()) + " erasures at group size " +
                              std::to_string(s));

    BlockVector bv;
    bv.s = s;
    bv.blocks.assign(static_cast<std::size_t>(s), BitString{});
    if (ell == 0) return bv;

    const std::vector<int> sizes = block_sizes(codec.codeword_bits(s), s);
    for (int j = 0; j < ell; ++j) {
        BitString column;
        for (int i = 0; i < s; ++i)
            column.push_back(members[static_cast<std::size_t>(i)].second.get(static_cast<std::size_t>(j)));
        BitString w = codec.encode_column(column);
        if (static_cast<int>(w.size()) != codec.codeword_bits(s))
            throw LengthMismatch("encode_group: codec returned wrong codeword length");
        std::size_t pos = 0;
        for (int i = 0; i < s; ++i) {
            bv.blocks[static_cast<std::size_t>(i)]->append(w.slice(pos, static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)])));
            pos += static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)]);
        }
    }
    return bv;
}

std::vector<std::pair<NodeId, BitString>> decode_group(const GroupCodec& codec,
                                                       const BlockVector& bv,
                                                       const std::vector<NodeId>& member_ids,
                                                       int ell) {
    const int s = bv.s;
    if (static_cast<int>(bv.blocks.size()) != s || static_cast<int>(member_ids.size()) != s)
        throw InvalidParams("decode_group: inconsistent sizes");
    if (bv.erased_count() > codec.budget())
        throw TooManyErasures("decode_group: " + std::to_string(bv.erased_count()) +
                              " erasures exceed budget " + std::to_string(codec.budget()));

    std::vector<std::pair<NodeId, BitString>> out;
    out.reserve(static_cast<std::size_t>(s));
    for (NodeId id : member_ids) out.push_back({id, BitString{}});
    if (ell == 0) return out;

    const std::vector<int> sizes = block_sizes(codec.codeword_bits(s), s);
    for (int i = 0; i < s; ++i) {
        const auto& b = bv.blocks[static_cast<std::size_t>(i)];
        if (b && static_cast<int>(b->size()) != ell * sizes[static_cast<std::size_t>(i)])
            throw CorruptBlockSize("decode_group: block of node " + std::to_string(member_ids[static_cast<std::size_t>(i)]) +
                                   " has " + std::to_string(b->size()) + " bits, expected " +
                                   std::to_string(ell * sizes[static_cast<std::size_t>(i)]));
    }
    for (int j = 0; j < ell; ++j) {
        std::vector<std::optional<BitString>> pieces(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) {
            const auto& b = bv.blocks[static_cast<std::size_t>(i)];
            if (b)
                pieces[static_cast<std::size_t>(i)] =
                    b->slice(static_cast<std::size_t>(j) * static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)]),
                             static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)]));
        }
        BitString column = codec.decode_column(pieces);
        if (static_cast<int>(column.size()) != s)
            throw LengthMismatch("decode_group: codec returned wrong column length");
        for (int i = 0; i < s; ++i) out[static_cast<std::size_t>(i)].second.push_back(column.get(static_cast<std::size_t>(i)));
    }
    return out;
}

} // namespace relab
