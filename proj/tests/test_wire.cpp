#include <doctest.h>

#include <stdexcept>

#include "trinc/errors.hpp"
#include "trinc/wire.hpp"

using namespace trinc;

namespace {

CodedPacket sample_coded(std::uint32_t m, std::uint64_t a, std::uint64_t B, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Packet> batch(m);
    for (std::uint32_t i = 0; i < m; ++i) batch[i] = Packet{i + 1, random_bits(B, rng)};
    return encode(batch, m == 1 ? uncoded_id() : id_at(m, a));
}

}  // namespace

TEST_CASE("compact frame golden bytes") {
    // M=4, a=5 (round 1, group 1, rotation 1 -> id (3,0,1,2)), B=8,
    // payload bits 10110011010 (11 bits = B + r_max).
    CodedPacket pkt;
    pkt.id = id_at(4, 5);
    pkt.batch_bits = 8;
    pkt.payload = BitVec(11);
    const char* bits = "10110011010";
    for (std::size_t i = 0; i < 11; ++i) pkt.payload.set(i, bits[i] == '1');

    const auto bytes = serialize(pkt, FrameMode::Compact);
    // header: A7 | version 1, mode 1 | M=0x0004 | B=0x00000008
    // body:   round 0x0001, group 0x0001, rotation 0x0001
    // payload: 1011 0011 010 + 5 zero pad bits
    const std::vector<std::uint8_t> expect{0xA7, 0x11, 0x00, 0x04, 0x00, 0x00, 0x00, 0x08,
                                           0x00, 0x01, 0x00, 0x01, 0x00, 0x01, 0xB3, 0x40};
    CHECK(bytes == expect);

    const auto frame = parse(bytes);
    const auto& back = std::get<CodedPacket>(frame);
    CHECK(back.id.r == std::vector<std::uint32_t>{3, 0, 1, 2});
    CHECK(back.batch_bits == 8);
    CHECK(back.payload == pkt.payload);
}

TEST_CASE("explicit frames round-trip valid ids") {
    for (const std::uint32_t m : {1u, 2u, 4u, 9u}) {
        for (const std::uint64_t a : {1ull, 3ull, 25ull}) {
            const auto pkt = sample_coded(m, a, 33, 17 * m + a);
            for (const auto mode : {FrameMode::ExplicitId, FrameMode::Compact}) {
                const auto bytes = serialize(pkt, mode);
                const auto back = std::get<CodedPacket>(parse(bytes));
                CHECK(back.id == pkt.id);
                CHECK(back.batch_bits == pkt.batch_bits);
                CHECK(back.payload == pkt.payload);
            }
        }
    }
}

TEST_CASE("rlnc frames round-trip") {
    SplitMix64 rng(5);
    std::vector<Packet> batch(4);
    for (std::uint32_t i = 0; i < 4; ++i) batch[i] = Packet{i + 1, random_bits(26, rng)};
    for (const unsigned q : {1u, 4u, 8u}) {
        const auto pkt = rlnc_encode(batch, q, rng);
        const auto bytes = serialize(pkt);
        const auto back = std::get<RlncCodedPacket>(parse(bytes));
        CHECK(back.q == pkt.q);
        CHECK(back.coefficients == pkt.coefficients);
        CHECK(back.symbols == pkt.symbols);
        CHECK(back.payload_bits == pkt.payload_bits);
    }
}

TEST_CASE("parse rejections carry distinct kinds") {
    const auto pkt = sample_coded(4, 5, 16, 3);
    auto bytes = serialize(pkt, FrameMode::Compact);

    auto mutate = [&](std::size_t index, std::uint8_t value) {
        auto copy = bytes;
        copy[index] = value;
        return copy;
    };

    try {
        parse(mutate(0, 0x55));
        FAIL("bad magic accepted");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::BadMagic);
    }
    try {
        parse(mutate(1, 0x21));  // version 2
        FAIL("bad version accepted");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::BadVersion);
    }
    try {
        parse(mutate(1, 0x13));  // mode 3
        FAIL("bad mode accepted");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::BadMode);
    }
    try {
        auto trunc = bytes;
        trunc.resize(trunc.size() - 2);
        parse(trunc);
        FAIL("truncated frame accepted");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::Truncated);
    }
    try {
        auto longer = bytes;
        longer.push_back(0);
        parse(longer);
        FAIL("trailing bytes accepted");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::TrailingBytes);
    }
    try {
        parse(mutate(11, 9));  // group 9 >= M
        FAIL("invalid group accepted");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::BadField);
    }
}

TEST_CASE("serialize precondition errors") {
    auto pkt = sample_coded(4, 1, 16, 9);
    CHECK_THROWS_AS(serialize(pkt, FrameMode::Rlnc), std::invalid_argument);
    pkt.batch_bits = 0;
    CHECK_THROWS_AS(serialize(pkt, FrameMode::Compact), std::invalid_argument);
}

TEST_CASE("fuzzed header mutations never crash") {
    const auto base_coded = serialize(sample_coded(5, 7, 40, 11), FrameMode::Compact);
    const auto base_expl = serialize(sample_coded(5, 7, 40, 12), FrameMode::ExplicitId);
    SplitMix64 rng(99);
    int parsed = 0, rejected = 0;
    for (int iter = 0; iter < 4000; ++iter) {
        auto bytes = (iter & 1) ? base_coded : base_expl;
        const int flips = 1 + static_cast<int>(rng.next_below(4));
        for (int f = 0; f < flips; ++f) {
            const std::size_t bit = rng.next_below(bytes.size() * 8);
            bytes[bit >> 3] ^= std::uint8_t{1} << (bit & 7);
        }
        if (rng.next_below(10) == 0) bytes.resize(rng.next_below(bytes.size() + 1));
        try {
            (void)parse(bytes);
            ++parsed;
        } catch (const ParseError&) {
            ++rejected;
        }
    }
    CHECK(parsed + rejected == 4000);
    CHECK(rejected > 0);
}
