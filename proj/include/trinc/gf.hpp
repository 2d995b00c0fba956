#pragma once

#include <cstdint>

namespace trinc {

// GF(2^q) arithmetic for q in {1, 4, 8}. Irreducible polynomials:
//   q=8: x^8 + x^4 + x^3 + x + 1   (0x11B)
//   q=4: x^4 + x + 1               (0x13)
//   q=1: trivial
class GField {
public:
    explicit GField(unsigned q);

    unsigned q() const { return q_; }
    unsigned size() const { return 1u << q_; }

    std::uint8_t add(std::uint8_t x, std::uint8_t y) const { return x ^ y; }
    std::uint8_t mul(std::uint8_t x, std::uint8_t y) const;
    std::uint8_t inv(std::uint8_t x) const;  // x != 0

private:
    unsigned q_;
    unsigned poly_;
};

struct GfElement {
    std::uint8_t value = 0;
    std::uint8_t q = 1;
};

// Element-level ops with field checking (the bulk paths use GField directly).
GfElement gf_add(GfElement x, GfElement y);
GfElement gf_mul(GfElement x, GfElement y);

}  // namespace trinc
