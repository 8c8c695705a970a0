#include "dtn/hmac_sha256.hpp"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace dtn {

namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0)
      throw std::runtime_error("libsodium initialization failed");
  });
}

}  // namespace

std::array<std::uint8_t, 32> hmac_sha256(ByteSpan key, ByteSpan data) {
  ensure_sodium();
  crypto_auth_hmacsha256_state state;
  crypto_auth_hmacsha256_init(&state, key.data(), key.size());
  crypto_auth_hmacsha256_update(&state, data.data(), data.size());
  std::array<std::uint8_t, 32> out;
  crypto_auth_hmacsha256_final(&state, out.data());
  return out;
}

bool constant_time_equal(ByteSpan a, ByteSpan b) {
  if (a.size() != b.size()) return false;
  ensure_sodium();
  return sodium_memcmp(a.data(), b.data(), a.size()) == 0;
}

}  // namespace dtn
