#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trinc/bitvec.hpp"
#include "trinc/id_sequence.hpp"

namespace trinc {

// One original packet of a batch. Indices are 1-based and each batch carries
// 1..M exactly once; all payloads in a batch have the same bit length B.
struct Packet {
    std::uint32_t index = 0;
    BitVec payload;
};

// Shift-padded XOR of a batch: bit j of the payload (0-based) is the XOR of
// original bits b[j - r_m, m] over every m with 0 <= j - r_m < B. Length is
// B + r_max(id).
struct CodedPacket {
    TriId id;
    BitVec payload;
    std::uint64_t batch_bits = 0;  // B of the originals
};

CodedPacket encode(std::span<const Packet> batch, const TriId& id,
                   std::uint64_t* op_counter = nullptr);

struct DecodeProgress {
    std::size_t newly_solved_bits = 0;
    std::vector<std::uint32_t> fully_decoded;  // packet indices completed by this push
    bool complete = false;
    bool redundant = false;  // id was already pushed; packet ignored
    bool stalled = false;    // enough distinct ids to determine the batch, but no
                             // single-unknown equation left to peel
};

// Bit-level peeling decoder. Every equation is one payload column of a
// received coded packet; columns with a single unknown are solved and the
// solution substituted into every equation referencing that bit. Packets
// from different rounds (different lengths) mix freely: equations align on
// original-bit coordinates, not column positions. Padding zeros are known
// constants and never enter the system.
//
// Single-owner mutable state; distinct decoders are independent.
class Decoder {
public:
    Decoder(std::uint32_t m, std::uint64_t payload_bits);

    DecodeProgress push(const CodedPacket& pkt);

    bool complete() const { return solved_count_ == total_bits_; }
    std::uint32_t batch_size() const { return m_; }
    std::uint64_t payload_bits() const { return bits_; }
    std::size_t received_count() const { return received_total_; }
    std::size_t distinct_count() const { return packets_.size(); }
    std::size_t solved_bit_count() const { return solved_count_; }
    std::uint64_t op_count() const { return ops_; }

    bool packet_ready(std::uint32_t index) const;  // index 1..m fully decoded?
    const BitVec& packet_bits(std::uint32_t index) const;

    // Recovered batch in index order; decoder must be complete.
    std::vector<Packet> packets() const;

    // Residual-system snapshot used for the stall diagnostic.
    std::size_t open_equation_count() const;
    std::vector<std::uint64_t> pushed_seqs() const;

private:
    struct Rx {
        TriId id;
        BitVec residual;                   // rhs after substituting solved bits
        std::vector<std::uint16_t> count;  // unknowns left per column
    };

    void solve_bit(std::uint32_t m_idx, std::uint64_t bit, bool value, DecodeProgress& prog);
    void peel(DecodeProgress& prog);

    std::uint32_t m_;
    std::uint64_t bits_;
    std::uint64_t total_bits_;
    std::vector<BitVec> solved_;  // per packet: which bits are known
    std::vector<BitVec> value_;   // per packet: the known bit values
    std::vector<std::uint64_t> per_packet_solved_;
    std::vector<Rx> packets_;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> work_;  // (rx index, column)
    std::size_t solved_count_ = 0;
    std::size_t received_total_ = 0;
    std::uint64_t ops_ = 0;
};

struct DecodeResult {
    std::vector<Packet> packets;
    std::uint64_t ops = 0;
};

// Convenience batch decode. Throws InsufficientPacketsError when fewer than m
// distinct ids are supplied, ContradictionError on corrupt input, StallError
// when the ids cannot be finished by peeling.
DecodeResult decode_all(std::uint32_t m, std::uint64_t payload_bits,
                        std::span<const CodedPacket> pkts);

}  // namespace trinc
