#pragma once

#include <array>
#include <cstdint>

#include "dtn/bytes.hpp"

namespace dtn {

std::array<std::uint8_t, 32> hmac_sha256(ByteSpan key, ByteSpan data);

// Length mismatch returns false immediately; equal-length compare is
// constant-time.
bool constant_time_equal(ByteSpan a, ByteSpan b);

}  // namespace dtn
