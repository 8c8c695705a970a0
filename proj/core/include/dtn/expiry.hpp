#pragma once

#include <cstdint>

#include "dtn/bundle.hpp"

namespace dtn {

struct ExpiryPolicy {
  std::uint64_t future_tolerance_s = 0;  // slack before a future timestamp is rejected
};

enum class Liveness {
  live,
  expired,
  invalid_future_timestamp,
};

const char* to_string(Liveness liveness);

// Two disciplines, one question. When an age block is present it alone
// decides (expired iff age > lifetime, strictly) and the UTC test, future
// check included, is skipped. Otherwise the UTC rule applies against the
// caller's local clock: expired iff local_now > creation_ts + lifetime,
// and a creation timestamp more than future_tolerance_s ahead of local_now
// is invalid_future_timestamp.
Liveness is_expired(const Bundle& bundle, std::int64_t local_now_s,
                    const ExpiryPolicy& policy);

// Adds measured residence time to the age block. Additive:
// accumulate_age(accumulate_age(b, r1), r2) equals accumulate_age(b, r1+r2).
// Throws Error(no_age_block) when the bundle carries none.
Bundle accumulate_age(Bundle bundle, std::uint64_t residence_ms);

// Milliseconds of life left under whichever discipline governs the bundle.
// Zero exactly at the boundary (still live; expiry is strict).
// Throws Error(already_expired) when the bundle is not live.
std::int64_t remaining_lifetime_ms(const Bundle& bundle, std::int64_t local_now_s);

// Sequence numbers restart at zero each time the creation second advances.
struct CreationClock {
  std::int64_t last_ts = -1;
  std::uint64_t next_seq = 0;

  std::uint64_t take(std::uint64_t creation_ts);
};

// Throws Error(invalid_lifetime) when lifetime_s is zero and
// Error(validation_error) when local_now_s is negative (a clock so far
// misset that it precedes the epoch cannot stamp a bundle).
Bundle new_bundle(const EndpointId& source, const EndpointId& destination,
                  std::uint64_t lifetime_s, Bytes payload,
                  std::int64_t local_now_s, bool with_age_block,
                  CreationClock& sequencer);

}  // namespace dtn
