#ifndef RELAB_SRC_WIRE_HPP
#define RELAB_SRC_WIRE_HPP

#include <cstdint>

#include "relab/bits.hpp"
#include "relab/congest.hpp"

namespace relab::wire {

// Message tags. Every fixed-layout protocol message is
// tag(8) | id(id_bits, transported as value-1) | aux(dist_bits).
// Stream chunks are tag(8) | raw payload bits.
enum Tag : std::uint8_t {
    // ruling-set restore
    RESTORE_ONE = 1,
    RESTORE_ID = 2,
    RESTORE_DIST = 3,
    RESTORE_ECHO = 4,
    RESTORE_X = 5,
    // partitioning
    PART_WAVE = 16,
    PART_WAVE_CHILD = 17,
    PART_REMAIN = 18,
    PART_ASSIGN = 19,
    PART_UP = 20,
    PART_ROOT_ASSIGN = 21,
    // group collection
    COLLECT_ANNOUNCE = 32,
    COLLECT_ORIENT = 33,
    COLLECT_ORIENT_CHILD = 34,
    COLLECT_STREAM_UP = 35,
    COLLECT_STREAM_DOWN = 36,
};

inline BitString pack(Tag tag, std::uint32_t id_value, std::uint64_t aux, const FieldWidths& w) {
    BitString m;
    m.append_uint(tag, 8);
    m.append_uint(id_value == 0 ? 0 : id_value - 1, w.id_bits);
    m.append_uint(aux, w.dist_bits);
    return m;
}

struct Fixed {
    Tag tag;
    std::uint32_t id;
    std::uint64_t aux;
};

inline Fixed unpack(const BitString& m, const FieldWidths& w) {
    Fixed f;
    f.tag = static_cast<Tag>(m.read_uint(0, 8));
    f.id = static_cast<std::uint32_t>(m.read_uint(8, w.id_bits)) + 1;
    f.aux = m.read_uint(8 + static_cast<std::size_t>(w.id_bits), w.dist_bits);
    return f;
}

inline Tag peek_tag(const BitString& m) { return static_cast<Tag>(m.read_uint(0, 8)); }

} // namespace relab::wire

#endif
