#include "relab/bits.hpp"

#include "relab/errors.hpp"

namespace relab {

BitString BitString::from_string(const std::string& zeros_ones) {
    BitString out;
    out.bits_.reserve(zeros_ones.size());
    for (char c : zeros_ones) {
        if (c == '0')
            out.bits_.push_back(0);
        else if (c == '1')
            out.bits_.push_back(1);
        else
            throw ParseError("BitString::from_string: invalid character");
    }
    return out;
}

void BitString::append_uint(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) bits_.push_back((value >> i) & 1u);
}

std::uint64_t BitString::read_uint(std::size_t pos, int width) const {
    if (pos + static_cast<std::size_t>(width) > bits_.size())
        throw TooShort("BitString::read_uint: out of range");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | bits_[pos + i];
    return v;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
    if (pos + len > bits_.size()) throw TooShort("BitString::slice: out of range");
    BitString out;
    out.bits_.assign(bits_.begin() + pos, bits_.begin() + pos + len);
    return out;
}

std::string BitString::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    std::size_t nibbles = (bits_.size() + 3) / 4;
    out.reserve(nibbles);
    for (std::size_t k = 0; k < nibbles; ++k) {
        unsigned v = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            std::size_t idx = 4 * k + i;
            v = (v << 1) | (idx < bits_.size() ? bits_[idx] : 0);
        }
        out.push_back(digits[v]);
    }
    return out;
}

std::string BitString::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(b ? '1' : '0');
    return out;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
    std::vector<std::uint8_t> out;
    std::uint32_t n = static_cast<std::uint32_t>(bits_.size());
    out.push_back((n >> 24) & 0xff);
    out.push_back((n >> 16) & 0xff);
    out.push_back((n >> 8) & 0xff);
    out.push_back(n & 0xff);
    std::uint8_t acc = 0;
    int filled = 0;
    for (auto b : bits_) {
        acc = static_cast<std::uint8_t>((acc << 1) | b);
        if (++filled == 8) {
            out.push_back(acc);
            acc = 0;
            filled = 0;
        }
    }
    if (filled > 0) out.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
    return out;
}

BitString BitString::from_bytes(const std::vector<std::uint8_t>& data) {
    if (data.size() < 4) throw ParseError("BitString::from_bytes: truncated header");
    std::uint32_t n = (std::uint32_t(data[0]) << 24) | (std::uint32_t(data[1]) << 16) |
                      (std::uint32_t(data[2]) << 8) | std::uint32_t(data[3]);
    std::size_t payload = (n + 7) / 8;
    if (data.size() < 4 + payload) throw ParseError("BitString::from_bytes: truncated payload");
    BitString out;
    out.bits_.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint8_t byte = data[4 + i / 8];
        out.bits_.push_back((byte >> (7 - i % 8)) & 1u);
    }
    return out;
}

int bitwidth(std::uint64_t v) {
    int w = 0;
    while (v) {
        ++w;
        v >>= 1;
    }
    return w;
}

int ceil_log2(std::uint64_t v) {
    if (v <= 1) return 0;
    return bitwidth(v - 1);
}

} // namespace relab
