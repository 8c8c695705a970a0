#pragma once

#include <cstdint>

#include "dtn/bytes.hpp"
#include "dtn/result.hpp"

namespace dtn {

// Self-Delimiting Numeric Value: unsigned 64-bit integer in base-128,
// most significant group first, high bit of each byte = continuation.
// Encodings are minimal; a leading 0x80 byte is rejected on decode.

inline constexpr std::size_t kSdnvMaxBytes = 10;

std::size_t sdnv_length(std::uint64_t value);

void append_sdnv(Bytes& out, std::uint64_t value);

Bytes encode_sdnv(std::uint64_t value);

struct SdnvValue {
  std::uint64_t value = 0;
  std::size_t consumed = 0;
};

// Errors: truncated (continuation bit on last available byte, or empty input),
// overflow (more than 10 bytes or value >= 2^64), non_minimal (leading 0x80).
Result<SdnvValue> decode_sdnv(ByteSpan in);

}  // namespace dtn
