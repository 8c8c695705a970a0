#include "dtn/crc32.hpp"

#include <array>

namespace dtn {

namespace {

// Reflected table for polynomial 0x04C11DB7 (ISO-HDLC / IEEE 802.3).
constexpr std::array<std::uint32_t, 256> kTable = [] {
  std::array<std::uint32_t, 256> t{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k)
      c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    t[i] = c;
  }
  return t;
}();

}  // namespace

std::uint32_t crc32_update(std::uint32_t state, ByteSpan data) {
  for (std::uint8_t byte : data)
    state = kTable[(state ^ byte) & 0xFFu] ^ (state >> 8);
  return state;
}

std::uint32_t crc32(ByteSpan data) {
  return crc32_final(crc32_update(kCrc32Init, data));
}

}  // namespace dtn
