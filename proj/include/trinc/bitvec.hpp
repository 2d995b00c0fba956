#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trinc/random.hpp"

namespace trinc {

// Fixed-length bit string. Bit 0 is the head (first transmitted) bit.
// Stored LSB-first within 64-bit words; wire-format handles network bit order.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    bool empty() const { return bits_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    // this ^= other, sizes must match
    void xor_with(const BitVec& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    }

    // this ^= (src << shift); this must be at least src.size() + shift bits long
    void xor_shifted(const BitVec& src, std::size_t shift) {
        const std::size_t word_off = shift >> 6;
        const unsigned bit_off = static_cast<unsigned>(shift & 63);
        if (bit_off == 0) {
            for (std::size_t w = 0; w < src.words_.size(); ++w)
                words_[w + word_off] ^= src.words_[w];
            return;
        }
        std::uint64_t carry = 0;
        for (std::size_t w = 0; w < src.words_.size(); ++w) {
            const std::uint64_t v = src.words_[w];
            words_[w + word_off] ^= (v << bit_off) | carry;
            carry = v >> (64 - bit_off);
        }
        if (carry != 0) words_[src.words_.size() + word_off] ^= carry;
    }

    bool is_zero() const {
        for (const auto w : words_)
            if (w != 0) return false;
        return true;
    }

    void fill_random(SplitMix64& rng) {
        for (auto& w : words_) w = rng.next();
        if (bits_ & 63) words_.back() &= (std::uint64_t{1} << (bits_ & 63)) - 1;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.bits_ == b.bits_ && a.words_ == b.words_;
    }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

inline BitVec random_bits(std::size_t n, SplitMix64& rng) {
    BitVec v(n);
    v.fill_random(rng);
    return v;
}

}  // namespace trinc
