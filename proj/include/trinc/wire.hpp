#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "trinc/codec.hpp"
#include "trinc/rlnc.hpp"

namespace trinc {

// Frame layout (big-endian bit packing, header then payload, zero padding to
// a byte boundary):
//   magic    8 bits  = 0xA7
//   version  4 bits  = 1
//   mode     4 bits  (0 explicit-id, 1 compact, 2 rlnc)
//   M       16 bits
//   B       32 bits  (payload bit length of the originals)
// explicit-id body: round (16) then M fields of ceil(log2(r_max+1)) bits each
// compact body:     round (16), group (16), rotation (16)
// rlnc body:        q (8) then M coefficients of q bits each
// payload:          B + r_max bits (triangular) or ceil(B/q)*q bits (rlnc)
enum class FrameMode : std::uint8_t { ExplicitId = 0, Compact = 1, Rlnc = 2 };

inline constexpr std::uint8_t kFrameMagic = 0xA7;
inline constexpr std::uint8_t kFrameVersion = 1;

std::vector<std::uint8_t> serialize(const CodedPacket& pkt, FrameMode mode);
std::vector<std::uint8_t> serialize(const RlncCodedPacket& pkt);

using ParsedFrame = std::variant<CodedPacket, RlncCodedPacket>;

// Inverse of serialize; throws ParseError with a distinct kind per failure.
ParsedFrame parse(std::span<const std::uint8_t> bytes);

}  // namespace trinc
