#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "trinc/id_sequence.hpp"

using namespace trinc;

namespace {
std::vector<std::uint32_t> rvec(std::uint32_t m, std::uint64_t a) { return id_at(m, a).r; }
}  // namespace

TEST_CASE("sequence reproduces the printed ids") {
    CHECK(rvec(4, 1) == std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(id_at(4, 1).round == 1);
    CHECK(id_at(4, 1).group == 0);
    CHECK(id_at(4, 1).rotation == 0);

    // second id: values rotate rightward around the anchored zero
    CHECK(rvec(4, 2) == std::vector<std::uint32_t>{0, 3, 1, 2});

    // group 2 starts with the zero anchored at the second position
    CHECK(rvec(4, 4) == std::vector<std::uint32_t>{1, 0, 2, 3});
    CHECK(rvec(4, 5) == std::vector<std::uint32_t>{3, 0, 1, 2});

    // last id of round 1 and the start of round 2
    CHECK(rvec(4, 12) == std::vector<std::uint32_t>{2, 3, 1, 0});
    CHECK(rvec(4, 13) == std::vector<std::uint32_t>{0, 2, 4, 6});
    CHECK(id_at(4, 13).round == 2);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(id_at(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(id_at(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(id_at(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(ids_needed(4, 0), std::invalid_argument);
}

TEST_CASE("seq_of inverts id_at") {
    CHECK(seq_of(id_at(4, 1)) == 1);
    CHECK(seq_of(tri_id_from_r({1, 0, 2, 3})) == 4);
    CHECK(seq_of(tri_id_from_r({0, 2, 4, 6})) == 13);
}

TEST_CASE("seq_of rejects vectors the sequence cannot produce") {
    CHECK_THROWS_AS(tri_id_from_r({0, 0, 1, 2}), std::invalid_argument);  // two zeros
    CHECK_THROWS_AS(tri_id_from_r({0, 1, 1, 3}), std::invalid_argument);  // repeated value
    CHECK_THROWS_AS(tri_id_from_r({0, 2, 1, 3}), std::invalid_argument);  // not a rotation
    CHECK_THROWS_AS(tri_id_from_r({0, 2, 4, 5}), std::invalid_argument);  // mixed scales
    CHECK_THROWS_AS(tri_id_from_r({1, 2, 3, 4}), std::invalid_argument);  // no zero
}

TEST_CASE("bijectivity over three rounds") {
    for (std::uint32_t m = 2; m <= 8; ++m) {
        std::set<std::vector<std::uint32_t>> seen;
        const std::uint64_t count = 3ull * m * (m - 1);
        for (std::uint64_t a = 1; a <= count; ++a) {
            const TriId id = id_at(m, a);
            CHECK(seen.insert(id.r).second);
            CHECK(seq_of(id) == a);
            CHECK(*std::max_element(id.r.begin(), id.r.end()) == id.round * (m - 1));
        }
    }
}

TEST_CASE("group structure: one anchor, cyclic value rotations") {
    const std::uint32_t m = 5;
    for (std::uint32_t g = 0; g < m; ++g) {
        const std::uint64_t base = std::uint64_t{g} * (m - 1) + 1;
        const TriId first = id_at(m, base);
        for (std::uint32_t t = 1; t < m - 1; ++t) {
            const TriId id = id_at(m, base + t);
            CHECK(id.group == first.group);
            CHECK(id.r[id.group] == 0);
            // values at non-anchored positions are a rotation of the first id's
            std::vector<std::uint32_t> a, b;
            for (std::uint32_t pos = 0; pos < m; ++pos) {
                if (pos == g) continue;
                a.push_back(first.r[pos]);
                b.push_back(id.r[pos]);
            }
            std::vector<std::uint32_t> rotated(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) rotated[(i + t) % a.size()] = a[i];
            CHECK(b == rotated);
        }
    }
}

TEST_CASE("each round scales the round-1 pattern") {
    const std::uint32_t m = 6;
    const std::uint64_t per_round = std::uint64_t{m} * (m - 1);
    for (std::uint64_t a = 1; a <= per_round; ++a) {
        const TriId r1 = id_at(m, a);
        for (std::uint32_t rho = 2; rho <= 4; ++rho) {
            const TriId rn = id_at(m, a + (rho - 1) * per_round);
            for (std::uint32_t i = 0; i < m; ++i) CHECK(rn.r[i] == rho * r1.r[i]);
        }
    }
}

TEST_CASE("ids_needed returns distinct ids, m=2 alternates anchors") {
    const auto ids = ids_needed(2, 2);
    CHECK(ids[0].r == std::vector<std::uint32_t>{0, 1});
    CHECK(ids[1].r == std::vector<std::uint32_t>{1, 0});

    const auto twelve = ids_needed(4, 12);
    CHECK(twelve.size() == 12);
    std::set<std::vector<std::uint32_t>> uniq;
    std::uint32_t per_group[4] = {0, 0, 0, 0};
    for (const auto& id : twelve) {
        uniq.insert(id.r);
        ++per_group[id.group];
    }
    CHECK(uniq.size() == 12);
    for (const auto c : per_group) CHECK(c == 3);
}
