#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trinc/codec.hpp"
#include "trinc/gf.hpp"
#include "trinc/random.hpp"

namespace trinc {

// Random linear coding over GF(2^q): payload split big-endian into q-bit
// symbols (tail zero-padded), symbol s of the coded packet is
// sum_m g_m * c_m[s].
struct RlncCodedPacket {
    std::vector<std::uint8_t> coefficients;  // one per original packet
    std::vector<std::uint8_t> symbols;
    std::uint8_t q = 8;
    std::uint64_t payload_bits = 0;  // B of the originals
};

std::vector<std::uint8_t> to_symbols(const BitVec& payload, unsigned q);
BitVec from_symbols(std::span<const std::uint8_t> symbols, unsigned q, std::uint64_t payload_bits);

// Coefficients drawn uniformly from GF(2^q); deterministic given the rng state.
RlncCodedPacket rlnc_encode(std::span<const Packet> batch, unsigned q, SplitMix64& rng,
                            std::uint64_t* op_counter = nullptr);

struct RlncDecodeResult {
    bool complete = false;
    std::size_t rank = 0;
    std::vector<Packet> packets;  // filled iff complete
};

// Gaussian elimination over GF(2^q); reports the achieved rank when the
// coefficient matrix is deficient.
RlncDecodeResult rlnc_decode(std::span<const RlncCodedPacket> pkts, std::uint32_t m,
                             std::uint64_t payload_bits);

// Incremental coefficient-rank tracker for simulation receivers.
class RlncRankTracker {
public:
    RlncRankTracker(std::uint32_t m, unsigned q);
    bool add(std::span<const std::uint8_t> coefficients);  // true if rank grew
    std::size_t rank() const { return rows_.size(); }

private:
    std::uint32_t m_;
    GField field_;
    std::vector<std::vector<std::uint8_t>> rows_;
    std::vector<std::uint32_t> pivot_;
};

}  // namespace trinc
