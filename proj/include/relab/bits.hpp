#ifndef RELAB_BITS_HPP
#define RELAB_BITS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace relab {

/// A growable sequence of bits with MSB-first integer packing.
///
/// Used for labels, codec columns/blocks and simulator messages, where
/// sizes are counted in bits and rarely byte-aligned.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}

    static BitString from_string(const std::string& zeros_ones);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool get(std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }

    void push_back(bool v) { bits_.push_back(v ? 1 : 0); }
    void append(const BitString& other) {
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    }

    // Appends `width` bits of `value`, most significant first.
    void append_uint(std::uint64_t value, int width);
    // Reads `width` bits starting at `pos`, most significant first.
    std::uint64_t read_uint(std::size_t pos, int width) const;

    BitString slice(std::size_t pos, std::size_t len) const;

    void clear() { bits_.clear(); }

    /// Hex dump, MSB-first, zero-padded to a whole number of nibbles.
    std::string to_hex() const;
    std::string to_string() const;

    /// Byte serialization: 32-bit big-endian bit count, then payload bytes
    /// MSB-first, zero-padded at the end of the whole string only.
    std::vector<std::uint8_t> to_bytes() const;
    static BitString from_bytes(const std::vector<std::uint8_t>& data);

    friend bool operator==(const BitString& a, const BitString& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const BitString& a, const BitString& b) { return !(a == b); }
    friend bool operator<(const BitString& a, const BitString& b) { return a.bits_ < b.bits_; }

private:
    std::vector<std::uint8_t> bits_; // one 0/1 value per bit
};

/// Number of bits needed to represent `v` (bitwidth(0) == 0).
int bitwidth(std::uint64_t v);

/// Smallest w with 2^w >= v, i.e. ceil(log2(v)) for v >= 1.
int ceil_log2(std::uint64_t v);

} // namespace relab

#endif
