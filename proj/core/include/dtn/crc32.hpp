#pragma once

#include <cstdint>

#include "dtn/bytes.hpp"

namespace dtn {

// CRC-32 (ISO-HDLC): polynomial 0x04C11DB7 reflected, init 0xFFFFFFFF,
// final xor 0xFFFFFFFF. crc32("") = 0x00000000, crc32("123456789") = 0xCBF43926.
std::uint32_t crc32(ByteSpan data);

std::uint32_t crc32_update(std::uint32_t state, ByteSpan data);

inline constexpr std::uint32_t kCrc32Init = 0xFFFFFFFFu;

inline std::uint32_t crc32_final(std::uint32_t state) { return state ^ 0xFFFFFFFFu; }

}  // namespace dtn
