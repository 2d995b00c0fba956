#include "trinc/gf.hpp"

#include <stdexcept>

namespace trinc {

GField::GField(unsigned q) : q_(q) {
    switch (q) {
        case 1: poly_ = 0x3; break;
        case 4: poly_ = 0x13; break;
        case 8: poly_ = 0x11B; break;
        default: throw std::invalid_argument("gf: q must be 1, 4 or 8");
    }
}

std::uint8_t GField::mul(std::uint8_t x, std::uint8_t y) const {
    // Carryless shift-and-add with reduction; q is small enough that tables
    // buy nothing at the packet sizes this library handles.
    unsigned a = x, b = y, acc = 0;
    const unsigned high = 1u << (q_ - 1);
    while (b != 0) {
        if (b & 1u) acc ^= a;
        b >>= 1;
        const bool overflow = (a & high) != 0;
        a <<= 1;
        if (overflow) a ^= poly_;
    }
    return static_cast<std::uint8_t>(acc & (size() - 1));
}

std::uint8_t GField::inv(std::uint8_t x) const {
    if (x == 0) throw std::invalid_argument("gf: zero has no inverse");
    // x^(2^q - 2) by square-and-multiply
    std::uint8_t result = 1;
    std::uint8_t base = x;
    unsigned e = size() - 2;
    while (e != 0) {
        if (e & 1u) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

namespace {
void check_fields(GfElement x, GfElement y) {
    if (x.q != y.q) throw std::invalid_argument("gf: mismatched field sizes");
}
}  // namespace

GfElement gf_add(GfElement x, GfElement y) {
    check_fields(x, y);
    return GfElement{static_cast<std::uint8_t>(x.value ^ y.value), x.q};
}

GfElement gf_mul(GfElement x, GfElement y) {
    check_fields(x, y);
    const GField f(x.q);
    return GfElement{f.mul(x.value, y.value), x.q};
}

}  // namespace trinc
