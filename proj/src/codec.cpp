#include "trinc/codec.hpp"

#include <algorithm>
#include <stdexcept>

#include "trinc/errors.hpp"

namespace trinc {

CodedPacket encode(std::span<const Packet> batch, const TriId& id, std::uint64_t* op_counter) {
    const std::uint32_t m = id.m;
    if (batch.size() != m) throw std::invalid_argument("encode: batch size does not match id");
    if (m == 0) throw std::invalid_argument("encode: empty batch");
    const std::uint64_t bits = batch[0].payload.size();
    if (bits == 0) throw std::invalid_argument("encode: empty payload");

    std::vector<const BitVec*> by_index(m, nullptr);
    for (const Packet& p : batch) {
        if (p.index < 1 || p.index > m || by_index[p.index - 1] != nullptr)
            throw std::invalid_argument("encode: packet indices must cover 1..m exactly once");
        if (p.payload.size() != bits)
            throw std::invalid_argument("encode: payload length mismatch within batch");
        by_index[p.index - 1] = &p.payload;
    }

    CodedPacket out;
    out.id = id;
    out.batch_bits = bits;
    out.payload = BitVec(bits + id.r_max());
    for (std::uint32_t i = 0; i < m; ++i)
        out.payload.xor_shifted(*by_index[i], id.r[i]);
    if (op_counter) *op_counter += std::uint64_t{m} * bits;  // one XOR per contributing bit
    return out;
}

Decoder::Decoder(std::uint32_t m, std::uint64_t payload_bits)
    : m_(m),
      bits_(payload_bits),
      total_bits_(std::uint64_t{m} * payload_bits),
      per_packet_solved_(m, 0) {
    if (m < 1) throw std::invalid_argument("decoder: batch size must be >= 1");
    if (payload_bits < 1) throw std::invalid_argument("decoder: payload must be >= 1 bit");
    solved_.assign(m, BitVec(payload_bits));
    value_.assign(m, BitVec(payload_bits));
}

void Decoder::solve_bit(std::uint32_t m_idx, std::uint64_t bit, bool value,
                        DecodeProgress& prog) {
    solved_[m_idx].set(bit, true);
    if (value) value_[m_idx].set(bit, true);
    ++solved_count_;
    ++prog.newly_solved_bits;
    if (++per_packet_solved_[m_idx] == bits_) prog.fully_decoded.push_back(m_idx + 1);

    // Substitute into every received packet; packet p references bit (m_idx, bit)
    // in its column bit + r[m_idx].
    for (std::uint32_t p = 0; p < packets_.size(); ++p) {
        Rx& rx = packets_[p];
        const std::uint64_t col = bit + rx.id.r[m_idx];
        auto& cnt = rx.count[col];
        if (cnt == 0) continue;  // column already closed
        ++ops_;
        if (value) rx.residual.flip(col);
        if (--cnt == 1) work_.emplace_back(p, col);
        if (cnt == 0 && rx.residual.get(col))
            throw ContradictionError("decode: equation reduced to 1 = 0");
    }
}

void Decoder::peel(DecodeProgress& prog) {
    while (!work_.empty()) {
        const auto [p, col] = work_.back();
        work_.pop_back();
        Rx& rx = packets_[p];
        if (rx.count[col] != 1) continue;  // stale entry
        // Locate the single remaining unknown in this column.
        std::uint32_t found_m = 0;
        std::uint64_t found_bit = 0;
        bool found = false;
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (col < rx.id.r[i]) continue;
            const std::uint64_t bit = col - rx.id.r[i];
            if (bit >= bits_) continue;
            if (!solved_[i].get(bit)) {
                found_m = i;
                found_bit = bit;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("decoder: unknown-count invariant violated");
        const bool v = rx.residual.get(col);
        ++ops_;  // the solve itself consumes this column's last reference
        rx.count[col] = 0;
        if (v) rx.residual.flip(col);
        solve_bit(found_m, found_bit, v, prog);
    }
}

DecodeProgress Decoder::push(const CodedPacket& pkt) {
    DecodeProgress prog;
    if (pkt.id.m != m_) throw std::invalid_argument("decode: id batch size mismatch");
    if (pkt.batch_bits != bits_) throw std::invalid_argument("decode: payload length mismatch");
    const std::uint64_t rmax = pkt.id.r_max();
    if (pkt.payload.size() != bits_ + rmax)
        throw std::invalid_argument("decode: coded payload length inconsistent with id");

    ++received_total_;
    for (const Rx& rx : packets_) {
        if (rx.id.r == pkt.id.r) {
            prog.redundant = true;
            prog.complete = complete();
            return prog;
        }
    }

    Rx rx;
    rx.id = pkt.id;
    rx.residual = pkt.payload;
    rx.count.assign(bits_ + rmax, 0);
    const auto p = static_cast<std::uint32_t>(packets_.size());
    packets_.push_back(std::move(rx));
    Rx& self = packets_.back();

    // Install the new packet's column equations, substituting already-known bits.
    for (std::uint32_t i = 0; i < m_; ++i) {
        const std::uint64_t off = self.id.r[i];
        for (std::uint64_t bit = 0; bit < bits_; ++bit) {
            const std::uint64_t col = bit + off;
            if (solved_[i].get(bit)) {
                ++ops_;
                if (value_[i].get(bit)) self.residual.flip(col);
            } else {
                ++self.count[col];
            }
        }
    }
    for (std::uint64_t col = 0; col < bits_ + rmax; ++col) {
        if (self.count[col] == 1)
            work_.emplace_back(p, col);
        else if (self.count[col] == 0 && self.residual.get(col))
            throw ContradictionError("decode: fully-known column disagrees with payload");
    }

    peel(prog);
    prog.complete = complete();
    prog.stalled = !prog.complete && packets_.size() >= m_;
    return prog;
}

bool Decoder::packet_ready(std::uint32_t index) const {
    if (index < 1 || index > m_) throw std::invalid_argument("decoder: packet index out of range");
    return per_packet_solved_[index - 1] == bits_;
}

const BitVec& Decoder::packet_bits(std::uint32_t index) const {
    if (!packet_ready(index)) throw std::logic_error("decoder: packet not fully decoded");
    return value_[index - 1];
}

std::vector<Packet> Decoder::packets() const {
    if (!complete()) throw std::logic_error("decoder: batch not complete");
    std::vector<Packet> out(m_);
    for (std::uint32_t i = 0; i < m_; ++i) out[i] = Packet{i + 1, value_[i]};
    return out;
}

std::size_t Decoder::open_equation_count() const {
    std::size_t open = 0;
    for (const Rx& rx : packets_)
        for (const auto c : rx.count)
            if (c > 0) ++open;
    return open;
}

std::vector<std::uint64_t> Decoder::pushed_seqs() const {
    std::vector<std::uint64_t> seqs;
    seqs.reserve(packets_.size());
    for (const Rx& rx : packets_)
        seqs.push_back(rx.id.m >= 2 ? seq_of(rx.id) : 1);
    return seqs;
}

DecodeResult decode_all(std::uint32_t m, std::uint64_t payload_bits,
                        std::span<const CodedPacket> pkts) {
    Decoder dec(m, payload_bits);
    for (const CodedPacket& pkt : pkts) {
        if (dec.push(pkt).complete) break;
    }
    if (!dec.complete()) {
        if (dec.distinct_count() < m)
            throw InsufficientPacketsError("decode: insufficient packets (" +
                                           std::to_string(dec.distinct_count()) + " distinct of " +
                                           std::to_string(m) + " required)");
        throw StallError("decode: peeling stalled with " + std::to_string(dec.distinct_count()) +
                             " distinct ids; residual system attached",
                         dec.batch_size() * dec.payload_bits() - dec.solved_bit_count(),
                         dec.open_equation_count(), dec.pushed_seqs());
    }
    return DecodeResult{dec.packets(), dec.op_count()};
}

}  // namespace trinc
