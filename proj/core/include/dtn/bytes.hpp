#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtn {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

std::string to_hex(ByteSpan data);

// Strict: even length, [0-9a-fA-F] only. Throws Error(parse_error) otherwise.
Bytes from_hex(std::string_view hex);

inline ByteSpan as_span(const Bytes& b) { return ByteSpan(b.data(), b.size()); }

inline ByteSpan as_span(std::string_view s) {
  return ByteSpan(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

}  // namespace dtn
