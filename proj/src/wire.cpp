#include "trinc/wire.hpp"

#include <stdexcept>

#include "trinc/errors.hpp"

namespace trinc {

namespace {

std::uint32_t ceil_log2_u32(std::uint64_t v) {
    std::uint32_t bits = 0;
    while ((std::uint64_t{1} << bits) < v) ++bits;
    return bits;
}

class BitWriter {
public:
    void put(std::uint64_t value, std::uint32_t bits) {
        for (std::uint32_t i = bits; i-- > 0;) put_bit((value >> i) & 1u);
    }
    void put_bit(bool b) {
        if (fill_ == 0) {
            bytes_.push_back(0);
            fill_ = 8;
        }
        --fill_;
        if (b) bytes_.back() |= std::uint8_t{1} << fill_;
    }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint32_t fill_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint64_t get(std::uint32_t bits) {
        std::uint64_t v = 0;
        for (std::uint32_t i = 0; i < bits; ++i) v = (v << 1) | (get_bit() ? 1u : 0u);
        return v;
    }
    bool get_bit() {
        if (pos_ >= bytes_.size() * 8)
            throw ParseError(ParseError::Kind::Truncated, "frame: truncated stream");
        const bool b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
        ++pos_;
        return b;
    }
    std::size_t bit_pos() const { return pos_; }
    std::size_t total_bits() const { return bytes_.size() * 8; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void write_header(BitWriter& w, FrameMode mode, std::uint32_t m, std::uint64_t bits) {
    if (m == 0 || m > 0xFFFF) throw std::invalid_argument("frame: M exceeds the 16-bit field");
    if (bits == 0 || bits > 0xFFFFFFFFull)
        throw std::invalid_argument("frame: B exceeds the 32-bit field");
    w.put(kFrameMagic, 8);
    w.put(kFrameVersion, 4);
    w.put(static_cast<std::uint64_t>(mode), 4);
    w.put(m, 16);
    w.put(bits, 32);
}

void write_payload(BitWriter& w, const BitVec& payload) {
    for (std::size_t i = 0; i < payload.size(); ++i) w.put_bit(payload.get(i));
}

BitVec read_payload(BitReader& r, std::uint64_t bits) {
    BitVec v(bits);
    for (std::uint64_t i = 0; i < bits; ++i) v.set(i, r.get_bit());
    return v;
}

void require_bits(const BitReader& r, std::uint64_t needed) {
    if (r.total_bits() - r.bit_pos() < needed)
        throw ParseError(ParseError::Kind::Truncated, "frame: truncated stream");
}

void finish_parse(BitReader& r) {
    // tail padding must be zero bits, and the stream must hold exactly one frame
    while (r.bit_pos() % 8 != 0)
        if (r.get_bit())
            throw ParseError(ParseError::Kind::BadField, "frame: nonzero tail padding");
    if (r.bit_pos() != r.total_bits())
        throw ParseError(ParseError::Kind::TrailingBytes, "frame: trailing bytes after frame");
}

}  // namespace

std::vector<std::uint8_t> serialize(const CodedPacket& pkt, FrameMode mode) {
    if (mode != FrameMode::ExplicitId && mode != FrameMode::Compact)
        throw std::invalid_argument("frame: mode incompatible with a triangular packet");
    const TriId& id = pkt.id;
    if (id.round > 0xFFFF || id.group > 0xFFFF || id.rotation > 0xFFFF)
        throw std::invalid_argument("frame: id fields exceed 16-bit widths");
    if (pkt.payload.size() != pkt.batch_bits + id.r_max())
        throw std::invalid_argument("frame: payload length inconsistent with id");

    BitWriter w;
    write_header(w, mode, id.m, pkt.batch_bits);
    if (mode == FrameMode::ExplicitId) {
        w.put(id.round, 16);
        const std::uint32_t width = ceil_log2_u32(std::uint64_t{id.r_max()} + 1);
        for (const std::uint32_t r : id.r) w.put(r, width);
    } else {
        w.put(id.round, 16);
        w.put(id.group, 16);
        w.put(id.rotation, 16);
    }
    write_payload(w, pkt.payload);
    return w.take();
}

std::vector<std::uint8_t> serialize(const RlncCodedPacket& pkt) {
    if (pkt.q != 1 && pkt.q != 4 && pkt.q != 8)
        throw std::invalid_argument("frame: unsupported field size");
    const std::uint64_t sym_count = (pkt.payload_bits + pkt.q - 1) / pkt.q;
    if (pkt.symbols.size() != sym_count)
        throw std::invalid_argument("frame: symbol count inconsistent with B");

    BitWriter w;
    write_header(w, FrameMode::Rlnc, static_cast<std::uint32_t>(pkt.coefficients.size()),
                 pkt.payload_bits);
    w.put(pkt.q, 8);
    for (const std::uint8_t g : pkt.coefficients) w.put(g, pkt.q);
    for (std::uint64_t s = 0; s < sym_count; ++s) w.put(pkt.symbols[s], pkt.q);
    return w.take();
}

ParsedFrame parse(std::span<const std::uint8_t> bytes) {
    BitReader r(bytes);
    if (r.get(8) != kFrameMagic) throw ParseError(ParseError::Kind::BadMagic, "frame: bad magic");
    if (r.get(4) != kFrameVersion)
        throw ParseError(ParseError::Kind::BadVersion, "frame: unsupported version");
    const std::uint64_t mode_raw = r.get(4);
    if (mode_raw > 2) throw ParseError(ParseError::Kind::BadMode, "frame: unknown mode");
    const auto mode = static_cast<FrameMode>(mode_raw);
    const auto m = static_cast<std::uint32_t>(r.get(16));
    const std::uint64_t bits = r.get(32);
    if (m == 0) throw ParseError(ParseError::Kind::BadField, "frame: zero batch size");
    if (bits == 0) throw ParseError(ParseError::Kind::BadField, "frame: zero payload length");

    if (mode == FrameMode::Rlnc) {
        const auto q = static_cast<unsigned>(r.get(8));
        if (q != 1 && q != 4 && q != 8)
            throw ParseError(ParseError::Kind::BadField, "frame: unsupported field size");
        RlncCodedPacket pkt;
        pkt.q = static_cast<std::uint8_t>(q);
        pkt.payload_bits = bits;
        const std::uint64_t sym_count = (bits + q - 1) / q;
        require_bits(r, std::uint64_t{m} * q + sym_count * q);
        pkt.coefficients.resize(m);
        for (auto& g : pkt.coefficients) g = static_cast<std::uint8_t>(r.get(q));
        pkt.symbols.resize(sym_count);
        for (auto& s : pkt.symbols) s = static_cast<std::uint8_t>(r.get(q));
        finish_parse(r);
        return pkt;
    }

    TriId id;
    if (mode == FrameMode::ExplicitId) {
        const auto round = static_cast<std::uint32_t>(r.get(16));
        if (round == 0) throw ParseError(ParseError::Kind::BadField, "frame: zero round");
        const std::uint64_t rmax = std::uint64_t{round} * (m - 1);
        if (rmax > 0xFFFFFFFFull)
            throw ParseError(ParseError::Kind::BadField, "frame: padding exceeds supported range");
        const std::uint32_t width = ceil_log2_u32(rmax + 1);
        require_bits(r, std::uint64_t{m} * width);
        std::vector<std::uint32_t> rv(m);
        for (auto& v : rv) v = static_cast<std::uint32_t>(r.get(width));
        try {
            id = tri_id_from_r(std::move(rv));
        } catch (const std::invalid_argument& e) {
            throw ParseError(ParseError::Kind::BadField, std::string("frame: ") + e.what());
        }
        if (id.round != round)
            throw ParseError(ParseError::Kind::BadField, "frame: round disagrees with paddings");
    } else {
        const auto round = static_cast<std::uint32_t>(r.get(16));
        const auto group = static_cast<std::uint32_t>(r.get(16));
        const auto rotation = static_cast<std::uint32_t>(r.get(16));
        try {
            id = tri_id_from_coords(m, round, group, rotation);
        } catch (const std::invalid_argument& e) {
            throw ParseError(ParseError::Kind::BadField, std::string("frame: ") + e.what());
        }
    }

    CodedPacket pkt;
    pkt.batch_bits = bits;
    require_bits(r, bits + id.r_max());
    pkt.payload = read_payload(r, bits + id.r_max());
    pkt.id = std::move(id);
    finish_parse(r);
    return pkt;
}

}  // namespace trinc
