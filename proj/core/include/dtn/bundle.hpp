#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtn/bytes.hpp"
#include "dtn/endpoint.hpp"

namespace dtn {

// Integrity ciphersuites. Suite 1 is a keyless reliability check; suite 2
// authenticates as well.
inline constexpr std::uint8_t kSuiteCrc32 = 1;
inline constexpr std::uint8_t kSuiteHmacSha256 = 2;

// Coverage bitset: which parts of the bundle the integrity result protects.
// bit0: immutable primary fields (destination, source, creation timestamp,
//       sequence number, lifetime), bit1: payload.
inline constexpr std::uint8_t kCoverPrimary = 0x01;
inline constexpr std::uint8_t kCoverPayload = 0x02;

struct IntegrityBlock {
  std::uint8_t suite_id = 0;
  std::uint8_t coverage = 0;
  Bytes result;  // 4 bytes (suite 1) or 32 bytes (suite 2), big-endian for CRC

  bool operator==(const IntegrityBlock&) const = default;
};

// Extension block of a type this stack does not interpret. Carried verbatim;
// flags exclude the structural last-block bit.
struct RawBlock {
  std::uint8_t block_type = 0;
  std::uint64_t flags = 0;
  Bytes body;

  bool operator==(const RawBlock&) const = default;
};

struct Bundle {
  EndpointId source;
  EndpointId destination;
  std::uint64_t creation_ts = 0;   // seconds since 2000-01-01T00:00:00 UTC, sender clock
  std::uint64_t creation_seq = 0;  // disambiguates bundles created in the same second
  std::uint64_t lifetime_s = 0;

  std::optional<std::uint64_t> age_ms;        // bundle-age extension block
  std::optional<IntegrityBlock> integrity;
  std::vector<RawBlock> extensions;           // unknown types, order preserved

  Bytes payload;

  bool operator==(const Bundle&) const = default;
};

// (source, creation_ts, creation_seq) is unique per scenario.
struct BundleId {
  std::string source;
  std::uint64_t creation_ts = 0;
  std::uint64_t creation_seq = 0;

  std::string str() const;
  bool operator==(const BundleId&) const = default;
};

BundleId id_of(const Bundle& b);

}  // namespace dtn
