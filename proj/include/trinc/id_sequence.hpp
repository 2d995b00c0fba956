#pragma once

#include <cstdint>
#include <vector>

namespace trinc {

// Coefficient set identifying one triangular coded packet: r[i] is the number
// of zero bits padded at the head of packet i+1. Exactly one entry is zero
// (at index `group`); the others are round * {1, ..., m-1}, assigned by
// rotating the base values rightward `rotation` times over the non-anchored
// positions.
struct TriId {
    std::uint32_t m = 0;
    std::vector<std::uint32_t> r;
    std::uint32_t round = 1;     // scale of this id (alpha)
    std::uint32_t group = 0;     // index of the zero entry
    std::uint32_t rotation = 0;  // 0 .. m-2

    std::uint32_t r_max() const { return round * (m - 1); }

    friend bool operator==(const TriId& a, const TriId& b) = default;
};

// The a-th id of the sequence for batch size m (a is 1-based). m >= 2.
TriId id_at(std::uint32_t m, std::uint64_t a);

// Inverse of id_at; validates the id and rejects r-vectors the sequence
// cannot produce.
std::uint64_t seq_of(const TriId& id);

// First `count` ids of the sequence.
std::vector<TriId> ids_needed(std::uint32_t m, std::size_t count);

// Builds (and validates) a TriId from a raw r-vector, deriving round, group
// and rotation. Accepts the degenerate m == 1 id {0} used for uncoded packets.
TriId tri_id_from_r(std::vector<std::uint32_t> r);

// Scheme id from its (round, group, rotation) coordinates.
TriId tri_id_from_coords(std::uint32_t m, std::uint32_t round, std::uint32_t group,
                         std::uint32_t rotation);

// The uncoded single-packet id for m == 1 batches.
TriId uncoded_id();

}  // namespace trinc
