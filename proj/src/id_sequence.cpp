#include "trinc/id_sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace trinc {

TriId id_at(std::uint32_t m, std::uint64_t a) {
    if (m < 2) throw std::invalid_argument("id_at: batch size must be >= 2");
    if (a < 1) throw std::invalid_argument("id_at: sequence number is 1-based");

    const std::uint64_t per_round = std::uint64_t{m} * (m - 1);
    const std::uint64_t round = (a - 1) / per_round + 1;
    if (round > 0xFFFFFFFFull / (m - 1))
        throw std::invalid_argument("id_at: sequence number out of supported range");
    const std::uint64_t offset = (a - 1) % per_round;
    const auto group = static_cast<std::uint32_t>(offset / (m - 1));
    const auto rotation = static_cast<std::uint32_t>(offset % (m - 1));

    TriId id;
    id.m = m;
    id.round = static_cast<std::uint32_t>(round);
    id.group = group;
    id.rotation = rotation;
    id.r.assign(m, 0);
    // Non-anchored positions in increasing order carry the base values
    // 1..m-1 rotated rightward `rotation` times, scaled by the round.
    std::uint32_t i = 0;
    for (std::uint32_t pos = 0; pos < m; ++pos) {
        if (pos == group) continue;
        const std::uint32_t base =
            (i + (m - 1) - rotation % (m - 1)) % (m - 1) + 1;
        id.r[pos] = id.round * base;
        ++i;
    }
    return id;
}

std::uint64_t seq_of(const TriId& id) {
    const TriId canon = tri_id_from_r(id.r);
    if (canon.m < 2) throw std::invalid_argument("seq_of: batch size must be >= 2");
    if (id.round != canon.round || id.group != canon.group || id.rotation != canon.rotation)
        throw std::invalid_argument("seq_of: id fields inconsistent with its r-vector");
    const std::uint64_t per_round = std::uint64_t{canon.m} * (canon.m - 1);
    return (canon.round - 1) * per_round + std::uint64_t{canon.group} * (canon.m - 1) +
           canon.rotation + 1;
}

std::vector<TriId> ids_needed(std::uint32_t m, std::size_t count) {
    if (count < 1) throw std::invalid_argument("ids_needed: count must be >= 1");
    std::vector<TriId> out;
    out.reserve(count);
    for (std::size_t a = 1; a <= count; ++a) out.push_back(id_at(m, a));
    return out;
}

TriId tri_id_from_r(std::vector<std::uint32_t> r) {
    const auto m = static_cast<std::uint32_t>(r.size());
    if (m == 0) throw std::invalid_argument("tri id: empty r-vector");

    std::uint32_t zero_count = 0;
    std::uint32_t group = 0;
    std::uint32_t rmax = 0;
    for (std::uint32_t pos = 0; pos < m; ++pos) {
        if (r[pos] == 0) {
            ++zero_count;
            group = pos;
        }
        rmax = std::max(rmax, r[pos]);
    }
    if (zero_count != 1) throw std::invalid_argument("tri id: exactly one zero entry required");

    TriId id;
    id.m = m;
    id.r = std::move(r);
    id.group = group;
    if (m == 1) {
        id.round = 1;
        id.rotation = 0;
        return id;
    }

    if (rmax % (m - 1) != 0)
        throw std::invalid_argument("tri id: max padding must be a multiple of m-1");
    const std::uint32_t round = rmax / (m - 1);
    if (round == 0) throw std::invalid_argument("tri id: zero round");

    // Recover the rotation from the first non-anchored value, then check that
    // every position matches the rotated base pattern.
    std::vector<std::uint32_t> base;
    base.reserve(m - 1);
    for (std::uint32_t pos = 0; pos < m; ++pos) {
        if (pos == group) continue;
        if (id.r[pos] % round != 0)
            throw std::invalid_argument("tri id: entry not divisible by the round");
        base.push_back(id.r[pos] / round);
    }
    const std::uint32_t rotation = (1 + (m - 1) - base[0] % (m - 1)) % (m - 1);
    for (std::uint32_t i = 0; i < m - 1; ++i) {
        const std::uint32_t expect = (i + (m - 1) - rotation % (m - 1)) % (m - 1) + 1;
        if (base[i] != expect)
            throw std::invalid_argument("tri id: values are not a rotation of the base pattern");
    }
    id.round = round;
    id.rotation = rotation;
    return id;
}

TriId tri_id_from_coords(std::uint32_t m, std::uint32_t round, std::uint32_t group,
                         std::uint32_t rotation) {
    if (m == 1) {
        if (round != 1 || group != 0 || rotation != 0)
            throw std::invalid_argument("tri id: invalid coordinates for m == 1");
        return uncoded_id();
    }
    if (m < 1 || round < 1 || group >= m || rotation >= m - 1)
        throw std::invalid_argument("tri id: coordinates out of range");
    const std::uint64_t per_round = std::uint64_t{m} * (m - 1);
    const std::uint64_t a =
        (std::uint64_t{round} - 1) * per_round + std::uint64_t{group} * (m - 1) + rotation + 1;
    return id_at(m, a);
}

TriId uncoded_id() {
    TriId id;
    id.m = 1;
    id.r = {0};
    id.round = 1;
    id.group = 0;
    id.rotation = 0;
    return id;
}

}  // namespace trinc
