#include <doctest.h>

#include <array>
#include <stdexcept>

#include "trinc/gf.hpp"

using namespace trinc;

namespace {

// Brute-force log/antilog tables from a known generator; independent check of
// the shift-and-add multiplier.
struct LogTables {
    std::array<int, 256> log{};
    std::array<std::uint8_t, 256> antilog{};

    LogTables(const GField& f, std::uint8_t generator) {
        std::uint8_t v = 1;
        for (unsigned i = 0; i + 1 < f.size(); ++i) {
            antilog[i] = v;
            log[v] = static_cast<int>(i);
            v = f.mul(v, generator);
        }
    }

    std::uint8_t mul(const GField& f, std::uint8_t a, std::uint8_t b) const {
        if (a == 0 || b == 0) return 0;
        const unsigned n = f.size() - 1;
        return antilog[(static_cast<unsigned>(log[a]) + static_cast<unsigned>(log[b])) % n];
    }
};

}  // namespace

TEST_CASE("known products in GF(256)") {
    const GField f(8);
    CHECK(f.mul(0x02, 0x03) == 0x06);
    CHECK(f.mul(0x80, 0x02) == 0x1B);  // single reduction by x^8+x^4+x^3+x+1
    CHECK(f.mul(0x53, 0xCA) == 0x01);  // a known inverse pair for this polynomial
}

TEST_CASE("field axioms, q in {1,4,8}") {
    for (const unsigned q : {1u, 4u, 8u}) {
        const GField f(q);
        const unsigned n = f.size();
        for (unsigned a = 0; a < n; ++a) {
            CHECK(f.mul(static_cast<std::uint8_t>(a), 1) == a);
            CHECK(f.add(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(a)) == 0);
            if (a != 0) {
                const std::uint8_t ia = f.inv(static_cast<std::uint8_t>(a));
                CHECK(f.mul(static_cast<std::uint8_t>(a), ia) == 1);
            }
        }
        // commutativity + distributivity on the full table (256^2 is cheap)
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = 0; b < n; ++b) {
                const auto x = static_cast<std::uint8_t>(a);
                const auto y = static_cast<std::uint8_t>(b);
                CHECK(f.mul(x, y) == f.mul(y, x));
                const std::uint8_t c = static_cast<std::uint8_t>((a * 31 + b * 17) & (n - 1));
                CHECK(f.mul(x, f.add(y, c)) == f.add(f.mul(x, y), f.mul(x, c)));
            }
    }
}

TEST_CASE("multiplier agrees with brute-force log/antilog tables") {
    const GField f8(8);
    const LogTables t8(f8, 0x03);  // 3 generates GF(256) for 0x11B
    for (unsigned a = 0; a < 256; a += 3)
        for (unsigned b = 0; b < 256; b += 5)
            CHECK(f8.mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
                  t8.mul(f8, static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)));

    const GField f4(4);
    const LogTables t4(f4, 0x02);  // x is primitive for x^4+x+1
    for (unsigned a = 0; a < 16; ++a)
        for (unsigned b = 0; b < 16; ++b)
            CHECK(f4.mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
                  t4.mul(f4, static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)));
}

TEST_CASE("element ops check the field") {
    CHECK(gf_add(GfElement{0x0F, 8}, GfElement{0xF0, 8}).value == 0xFF);
    CHECK(gf_mul(GfElement{0x02, 8}, GfElement{0x03, 8}).value == 0x06);
    CHECK_THROWS_AS(gf_mul(GfElement{1, 8}, GfElement{1, 4}), std::invalid_argument);
    CHECK_THROWS_AS(GField(3), std::invalid_argument);
}
