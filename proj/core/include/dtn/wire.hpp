#pragma once

#include <cstdint>

#include "dtn/bundle.hpp"
#include "dtn/bytes.hpp"
#include "dtn/result.hpp"

namespace dtn {

// On-wire bundle image:
//
//   primary block   version 0x06 | processing flags SDNV (0) |
//                   dest EID (length SDNV + UTF-8) | source EID |
//                   creation_ts SDNV | creation_seq SDNV | lifetime SDNV
//   canonical block type byte | flags SDNV | body length SDNV | body
//
// Encode order: integrity block, bundle-age block, other extensions,
// payload last. Exactly the final block carries the last-block flag.

inline constexpr std::uint8_t kWireVersion = 0x06;

inline constexpr std::uint8_t kBlockPayload = 1;
inline constexpr std::uint8_t kBlockAge = 10;
inline constexpr std::uint8_t kBlockIntegrity = 13;

inline constexpr std::uint64_t kBlockFlagLast = 0x01;
inline constexpr std::uint64_t kBlockFlagDiscardIfUnprocessable = 0x02;

// Where the payload body sits inside an encoded image.
struct PayloadRegion {
  std::size_t offset = 0;
  std::size_t length = 0;

  bool contains_bit(std::uint64_t bit) const {
    return bit >= offset * 8 && bit < (offset + length) * 8;
  }
};

// The primary fields in wire form (dest, source, creation_ts, creation_seq,
// lifetime). This is also the coverage image for integrity bit0.
Bytes encode_primary_fields(const Bundle& bundle);

Bytes encode_bundle(const Bundle& bundle, PayloadRegion* region = nullptr);

struct DecodedBundle {
  Bundle bundle;
  PayloadRegion payload;  // offsets into the decoded image
};

// Total: any byte sequence yields a bundle or a DecodeError, never a crash.
Result<Bundle> decode_bundle(ByteSpan image);
Result<DecodedBundle> decode_bundle_ex(ByteSpan image);

}  // namespace dtn
