#include <doctest.h>

#include <algorithm>

#include "trinc/codec.hpp"
#include "trinc/rank_oracle.hpp"
#include "trinc/random.hpp"

using namespace trinc;

namespace {

std::vector<TriId> ids_of(std::uint32_t m, std::initializer_list<std::uint64_t> seqs) {
    std::vector<TriId> ids;
    for (const auto a : seqs) ids.push_back(id_at(m, a));
    return ids;
}

std::vector<TriId> group_ids(std::uint32_t m, std::uint32_t round, std::uint32_t g) {
    std::vector<TriId> ids;
    for (std::uint32_t t = 0; t < m - 1; ++t) ids.push_back(tri_id_from_coords(m, round, g, t));
    return ids;
}

}  // namespace

TEST_CASE("lambda rows are the shifted powers of two") {
    const auto row = lambda_row(id_at(4, 1));  // (0,1,2,3), r_max 3
    CHECK(row == std::vector<BigInt>{8, 4, 2, 1});
    const auto row4 = lambda_row(id_at(4, 4));  // (1,0,2,3)
    CHECK(row4 == std::vector<BigInt>{4, 8, 2, 1});
}

TEST_CASE("a complete group has rank exactly m-1") {
    CHECK(lambda_rank(ids_of(4, {1, 2, 3})) == 3);
    for (std::uint32_t m = 2; m <= 8; ++m)
        for (std::uint32_t round = 1; round <= 2; ++round)
            for (std::uint32_t g = 0; g < m; ++g)
                CHECK(lambda_rank(group_ids(m, round, g)) == m - 1);
}

TEST_CASE("group plus an id from another group has rank m") {
    CHECK(lambda_rank(ids_of(4, {1, 2, 3, 4})) == 4);
    for (std::uint32_t m = 3; m <= 6; ++m) {
        const std::uint64_t pool = 2ull * m * (m - 1);
        for (std::uint32_t g = 0; g < m; ++g) {
            auto grp = group_ids(m, 1, g);
            for (std::uint64_t a = 1; a <= pool; ++a) {
                const TriId probe = id_at(m, a);
                if (probe.group == g && probe.round == 1) continue;
                grp.push_back(probe);
                CHECK(lambda_rank(grp) == m);
                grp.pop_back();
            }
        }
    }
}

TEST_CASE("single id has rank 1") { CHECK(lambda_rank(ids_of(5, {17})) == 1); }

TEST_CASE("mixed batch sizes are rejected") {
    std::vector<TriId> ids{id_at(4, 1), id_at(5, 1)};
    CHECK_THROWS_AS(lambda_rank(ids), std::invalid_argument);
}

TEST_CASE("rank-deficient sequence subsets exist and are frozen") {
    // Same-rotation ids of two groups differ by a multiple of e_g - e_g', so
    // two such pairs are dependent. These are the smallest instances.
    CHECK(lambda_rank(ids_of(3, {1, 8, 9})) == 2);
    CHECK(lambda_rank(ids_of(4, {1, 2, 4, 5})) == 3);

    // exhaustive deficiency counts over rounds 1-2, subsets of size <= m
    const auto deficient_count = [](std::uint32_t m) {
        const std::uint64_t pool_n = 2ull * m * (m - 1);
        std::vector<TriId> pool;
        for (std::uint64_t a = 1; a <= pool_n; ++a) pool.push_back(id_at(m, a));
        std::uint64_t bad = 0;
        std::vector<std::uint32_t> pick;
        const auto recurse = [&](auto&& self, std::uint32_t start, std::uint32_t left) -> void {
            if (left == 0) {
                std::vector<TriId> ids;
                for (const auto i : pick) ids.push_back(pool[i]);
                if (lambda_rank(ids) != ids.size()) ++bad;
                return;
            }
            for (std::uint32_t i = start; i + left <= pool_n; ++i) {
                pick.push_back(i);
                self(self, i + 1, left - 1);
                pick.pop_back();
            }
        };
        for (std::uint32_t n = 1; n <= m; ++n) recurse(recurse, 0, n);
        return bad;
    };
    CHECK(deficient_count(2) == 0);
    CHECK(deficient_count(3) == 6);
    CHECK(deficient_count(4) == 186);
}

TEST_CASE("sequence prefixes are always innovative") {
    for (std::uint32_t m = 2; m <= 8; ++m) {
        std::vector<TriId> prefix;
        for (std::uint64_t a = 1; a <= m; ++a) {
            prefix.push_back(id_at(m, a));
            CHECK(lambda_rank(prefix) == prefix.size());
        }
    }
}

TEST_CASE("independence condition for group-plus-probe") {
    // probe (1,0,2,3) against the group anchored at position 0: lambda =
    // (4,8,2,1), 2^3*(8+2+1) = 88 != 7*4
    const auto grp = group_ids(4, 1, 0);
    CHECK(lemma2_condition(grp, id_at(4, 4)));

    // m=2: group {(0,1)}, probe (1,0)
    CHECK(lemma2_condition(group_ids(2, 1, 0), id_at(2, 2)));

    // probe anchored at the group's own position is not a different group
    CHECK_THROWS_AS(lemma2_condition(grp, id_at(4, 1)), std::invalid_argument);
    CHECK_THROWS_AS(lemma2_condition(grp, id_at(4, 2)), std::invalid_argument);

    // agrees with the rank oracle on every probe, rounds 1-2, any group round
    for (std::uint32_t m = 3; m <= 5; ++m) {
        for (std::uint32_t ground = 1; ground <= 2; ++ground) {
            for (std::uint32_t g = 0; g < m; ++g) {
                auto group = group_ids(m, ground, g);
                for (std::uint64_t a = 1; a <= 2ull * m * (m - 1); ++a) {
                    const TriId probe = id_at(m, a);
                    if (probe.group == g && probe.round == ground) continue;
                    const bool cond = lemma2_condition(group, probe);
                    group.push_back(probe);
                    CHECK(cond == (lambda_rank(group) == m));
                    group.pop_back();
                }
            }
        }
    }
}

TEST_CASE("bit oracle matches hand-checked small systems") {
    CHECK(bit_solvable(4, 4, ids_of(4, {1, 4, 5, 10})));          // the collected-set example
    CHECK(bit_solvable(2, 1, ids_of(2, {1, 2})));                 // 2 unknowns, 4 columns
    CHECK_FALSE(bit_solvable(4, 64, ids_of(4, {1, 2, 4, 5})));    // rank-deficient set
    CHECK(bit_solvable(4, 64, ids_of(4, {1, 5, 13, 20})));        // solvable but peel-stalled
    for (const std::uint32_t m : {2u, 3u, 5u}) {
        std::vector<TriId> fewer;
        for (std::uint64_t a = 1; a < m; ++a) fewer.push_back(id_at(m, a));
        CHECK_FALSE(bit_solvable(m, 32, fewer));  // m-1 ids can never pin m*32 bits
    }
}

TEST_CASE("oracle agreement: peeling success vs elimination, sampled") {
    SplitMix64 rng(2024);
    for (std::uint32_t m = 2; m <= 6; ++m) {
        const std::uint64_t pool_n = 2ull * m * (m - 1);
        std::vector<TriId> pool;
        for (std::uint64_t a = 1; a <= pool_n; ++a) pool.push_back(id_at(m, a));
        for (const std::uint64_t B : {1ull, 7ull, 33ull}) {
            std::vector<Packet> batch(m);
            SplitMix64 prng(m * 100 + B);
            for (std::uint32_t i = 0; i < m; ++i) batch[i] = Packet{i + 1, random_bits(B, prng)};
            for (int iter = 0; iter < 60; ++iter) {
                const std::size_t n = 1 + rng.next_below(m);
                std::vector<TriId> ids;
                std::vector<std::size_t> perm(pool_n);
                for (std::size_t i = 0; i < pool_n; ++i) perm[i] = i;
                for (std::size_t i = 0; i < n; ++i)
                    std::swap(perm[i], perm[i + rng.next_below(pool_n - i)]);
                for (std::size_t i = 0; i < n; ++i) ids.push_back(pool[perm[i]]);

                Decoder dec(m, B);
                for (const TriId& id : ids) dec.push(encode(batch, id));
                const bool peeled = dec.complete();
                const bool solvable = bit_solvable(m, B, ids);
                // peeling can only succeed on solvable systems; where it
                // completes, the recovered bits must be the originals
                if (peeled) {
                    CHECK(solvable);
                    for (std::uint32_t i = 0; i < m; ++i)
                        CHECK(dec.packet_bits(i + 1) == batch[i].payload);
                }
                if (!solvable) CHECK_FALSE(peeled);
            }
        }
    }
}
