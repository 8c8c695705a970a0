#include "dtn/fault.hpp"

#include <algorithm>
#include <cmath>

namespace dtn {

std::uint64_t Rng::bounded(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t threshold = -n % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = eng_();
    if (r >= threshold) return r % n;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::vector<std::uint64_t> transit_flip_positions(std::uint64_t nbits, double ber,
                                                  Rng& rng) {
  std::vector<std::uint64_t> positions;
  if (nbits == 0 || ber <= 0.0) return positions;
  // Gap to the next flip is geometric: floor(log(1-u) / log(1-ber)). Drawing
  // gaps instead of per-bit Bernoulli keeps the stream prefix-deterministic:
  // a longer image under the same rng state flips the same leading positions.
  const double denom = std::log1p(-ber);
  std::uint64_t pos = 0;
  while (pos < nbits) {
    double u = rng.unit();
    double gap = std::floor(std::log1p(-u) / denom);
    if (gap >= static_cast<double>(nbits - pos)) break;  // also guards the cast
    pos += static_cast<std::uint64_t>(gap);
    positions.push_back(pos);
    ++pos;
  }
  return positions;
}

std::vector<std::uint64_t> storage_flip_positions(std::uint64_t nbits,
                                                  const FaultModel& model,
                                                  Rng& rng) {
  std::vector<std::uint64_t> positions;
  if (nbits == 0 || model.storage_corrupt_prob <= 0.0) return positions;
  if (rng.unit() >= model.storage_corrupt_prob) return positions;
  std::uint64_t want = std::min<std::uint64_t>(model.storage_flip_bits, nbits);
  while (positions.size() < want) {
    std::uint64_t p = rng.bounded(nbits);
    if (std::find(positions.begin(), positions.end(), p) == positions.end())
      positions.push_back(p);
  }
  std::sort(positions.begin(), positions.end());
  return positions;
}

void flip_bits(Bytes& data, const std::vector<std::uint64_t>& positions) {
  for (std::uint64_t pos : positions) {
    std::uint64_t byte = pos >> 3;
    if (byte >= data.size()) continue;
    data[byte] ^= static_cast<std::uint8_t>(1u << (pos & 7));
  }
}

Bytes corrupt_transit(ByteSpan data, double ber, Rng& rng) {
  Bytes out(data.begin(), data.end());
  flip_bits(out, transit_flip_positions(static_cast<std::uint64_t>(data.size()) * 8,
                                        ber, rng));
  return out;
}

Bytes corrupt_storage(ByteSpan data, const FaultModel& model, Rng& rng) {
  Bytes out(data.begin(), data.end());
  flip_bits(out, storage_flip_positions(static_cast<std::uint64_t>(data.size()) * 8,
                                        model, rng));
  return out;
}

}  // namespace dtn
