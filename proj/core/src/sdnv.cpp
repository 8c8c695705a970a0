#include "dtn/sdnv.hpp"

namespace dtn {

std::size_t sdnv_length(std::uint64_t value) {
  std::size_t n = 1;
  while (value >>= 7) ++n;
  return n;
}

void append_sdnv(Bytes& out, std::uint64_t value) {
  std::size_t n = sdnv_length(value);
  for (std::size_t i = n; i-- > 0;) {
    std::uint8_t group = static_cast<std::uint8_t>((value >> (7 * i)) & 0x7F);
    out.push_back(i > 0 ? static_cast<std::uint8_t>(group | 0x80) : group);
  }
}

Bytes encode_sdnv(std::uint64_t value) {
  Bytes out;
  out.reserve(sdnv_length(value));
  append_sdnv(out, value);
  return out;
}

Result<SdnvValue> decode_sdnv(ByteSpan in) {
  if (in.empty())
    return DecodeError{DecodeErrc::truncated, 0, "empty input for varint"};
  // A leading zero group encodes nothing; minimal form forbids it.
  if (in[0] == 0x80)
    return DecodeError{DecodeErrc::non_minimal, 0, "leading 0x80 padding byte"};

  std::uint64_t value = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i == kSdnvMaxBytes)
      return DecodeError{DecodeErrc::overflow, i, "varint longer than 10 bytes"};
    if (value > (UINT64_MAX >> 7))
      return DecodeError{DecodeErrc::overflow, i, "varint exceeds 64 bits"};
    std::uint8_t b = in[i];
    value = (value << 7) | (b & 0x7F);
    if ((b & 0x80) == 0) return SdnvValue{value, i + 1};
  }
  return DecodeError{DecodeErrc::truncated, in.size(),
                     "continuation bit set on last available byte"};
}

}  // namespace dtn
