#include "trinc/rlnc.hpp"

#include <stdexcept>

namespace trinc {

std::vector<std::uint8_t> to_symbols(const BitVec& payload, unsigned q) {
    const std::uint64_t bits = payload.size();
    const std::uint64_t count = (bits + q - 1) / q;
    std::vector<std::uint8_t> out(count, 0);
    for (std::uint64_t i = 0; i < bits; ++i) {
        if (payload.get(i)) {
            const std::uint64_t s = i / q;
            out[s] |= std::uint8_t{1} << (q - 1 - i % q);  // head bit is the symbol MSB
        }
    }
    return out;
}

BitVec from_symbols(std::span<const std::uint8_t> symbols, unsigned q,
                    std::uint64_t payload_bits) {
    BitVec out(payload_bits);
    for (std::uint64_t i = 0; i < payload_bits; ++i) {
        const std::uint64_t s = i / q;
        if ((symbols[s] >> (q - 1 - i % q)) & 1u) out.set(i, true);
    }
    return out;
}

RlncCodedPacket rlnc_encode(std::span<const Packet> batch, unsigned q, SplitMix64& rng,
                            std::uint64_t* op_counter) {
    if (batch.empty()) throw std::invalid_argument("rlnc_encode: empty batch");
    const GField field(q);
    const std::uint64_t bits = batch[0].payload.size();
    for (const Packet& p : batch)
        if (p.payload.size() != bits)
            throw std::invalid_argument("rlnc_encode: payload length mismatch");

    RlncCodedPacket out;
    out.q = static_cast<std::uint8_t>(q);
    out.payload_bits = bits;
    out.coefficients.resize(batch.size());
    for (auto& g : out.coefficients)
        g = static_cast<std::uint8_t>(rng.next() & (field.size() - 1));

    const std::uint64_t sym_count = (bits + q - 1) / q;
    out.symbols.assign(sym_count, 0);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto syms = to_symbols(batch[i].payload, q);
        const std::uint8_t g = out.coefficients[i];
        for (std::uint64_t s = 0; s < sym_count; ++s)
            out.symbols[s] ^= field.mul(g, syms[s]);
    }
    if (op_counter) *op_counter += batch.size() * sym_count;  // one mul-add per symbol
    return out;
}

RlncDecodeResult rlnc_decode(std::span<const RlncCodedPacket> pkts, std::uint32_t m,
                             std::uint64_t payload_bits) {
    if (pkts.empty()) throw std::invalid_argument("rlnc_decode: no packets");
    const unsigned q = pkts[0].q;
    const GField field(q);
    const std::uint64_t sym_count = (payload_bits + q - 1) / q;
    for (const auto& p : pkts) {
        if (p.q != q || p.coefficients.size() != m || p.payload_bits != payload_bits ||
            p.symbols.size() != sym_count)
            throw std::invalid_argument("rlnc_decode: inconsistent packet dimensions");
    }

    // Augmented rows [coefficients | symbols], reduced to echelon form.
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<std::uint32_t> pivot;
    for (const auto& p : pkts) {
        std::vector<std::uint8_t> row(m + sym_count);
        std::copy(p.coefficients.begin(), p.coefficients.end(), row.begin());
        std::copy(p.symbols.begin(), p.symbols.end(), row.begin() + m);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::uint8_t f = row[pivot[i]];
            if (f == 0) continue;
            for (std::size_t c = 0; c < row.size(); ++c)
                row[c] ^= field.mul(f, rows[i][c]);
        }
        for (std::uint32_t c = 0; c < m; ++c) {
            if (row[c] != 0) {
                const std::uint8_t s = field.inv(row[c]);
                for (auto& v : row) v = field.mul(v, s);
                rows.push_back(std::move(row));
                pivot.push_back(c);
                break;
            }
        }
        if (rows.size() == m) break;
    }

    RlncDecodeResult result;
    result.rank = rows.size();
    if (rows.size() < m) return result;

    // Back substitution to the identity, then lift symbols back to bits.
    for (std::size_t i = rows.size(); i-- > 0;) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (j == i) continue;
            const std::uint8_t f = rows[j][pivot[i]];
            if (f == 0) continue;
            for (std::size_t c = 0; c < rows[j].size(); ++c)
                rows[j][c] ^= field.mul(f, rows[i][c]);
        }
    }
    result.complete = true;
    result.packets.resize(m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::uint32_t idx = pivot[i];
        result.packets[idx] = Packet{
            idx + 1,
            from_symbols(std::span(rows[i]).subspan(m), q, payload_bits)};
    }
    return result;
}

RlncRankTracker::RlncRankTracker(std::uint32_t m, unsigned q) : m_(m), field_(q) {}

bool RlncRankTracker::add(std::span<const std::uint8_t> coefficients) {
    if (coefficients.size() != m_) throw std::invalid_argument("rank tracker: bad vector size");
    std::vector<std::uint8_t> row(coefficients.begin(), coefficients.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::uint8_t f = row[pivot_[i]];
        if (f == 0) continue;
        for (std::uint32_t c = 0; c < m_; ++c) row[c] ^= field_.mul(f, rows_[i][c]);
    }
    for (std::uint32_t c = 0; c < m_; ++c) {
        if (row[c] != 0) {
            const std::uint8_t s = field_.inv(row[c]);
            for (auto& v : row) v = field_.mul(v, s);
            rows_.push_back(std::move(row));
            pivot_.push_back(c);
            return true;
        }
    }
    return false;
}

}  // namespace trinc
