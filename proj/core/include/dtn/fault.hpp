#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "dtn/bytes.hpp"

namespace dtn {

// Deterministic randomness. mt19937_64 output is pinned by the standard, so
// a seed fully determines every fault stream on a given build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), unbiased by rejection.
  std::uint64_t bounded(std::uint64_t n);

 private:
  std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t hash_str(std::string_view s);  // FNV-1a 64

struct FaultModel {
  double transit_ber = 0.0;            // per-bit flip probability in [0, 1)
  double storage_corrupt_prob = 0.0;   // per queued bundle per dispatch cycle
  std::uint32_t storage_flip_bits = 1; // distinct positions per storage event
  std::uint64_t rng_seed = 0;          // 0: derive from (scenario seed, link id)

  bool operator==(const FaultModel&) const = default;
};

// Bit positions hit by an independent per-bit Bernoulli(ber) process over
// nbits, ascending. Sampled by geometric gaps, so cost scales with the number
// of flips rather than the number of bits.
std::vector<std::uint64_t> transit_flip_positions(std::uint64_t nbits, double ber,
                                                  Rng& rng);

// Positions for one storage-corruption trial: empty most of the time, and
// storage_flip_bits distinct positions when the per-cycle draw fires.
std::vector<std::uint64_t> storage_flip_positions(std::uint64_t nbits,
                                                  const FaultModel& model,
                                                  Rng& rng);

void flip_bits(Bytes& data, const std::vector<std::uint64_t>& positions);

Bytes corrupt_transit(ByteSpan data, double ber, Rng& rng);

Bytes corrupt_storage(ByteSpan data, const FaultModel& model, Rng& rng);

}  // namespace dtn
