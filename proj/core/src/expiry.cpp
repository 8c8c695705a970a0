#include "dtn/expiry.hpp"

#include "dtn/errors.hpp"

namespace dtn {

namespace {

using int128 = __int128;

int128 deadline_s(const Bundle& b) {
  return static_cast<int128>(b.creation_ts) + static_cast<int128>(b.lifetime_s);
}

}  // namespace

const char* to_string(Liveness liveness) {
  switch (liveness) {
    case Liveness::live: return "live";
    case Liveness::expired: return "expired";
    case Liveness::invalid_future_timestamp: return "invalid_future_timestamp";
  }
  return "?";
}

Liveness is_expired(const Bundle& bundle, std::int64_t local_now_s,
                    const ExpiryPolicy& policy) {
  if (bundle.age_ms) {
    // Age governs alone; a bundle with an age block never trips the UTC
    // checks, however wrong the surrounding clocks are.
    int128 age = static_cast<int128>(*bundle.age_ms);
    int128 budget = static_cast<int128>(bundle.lifetime_s) * 1000;
    return age > budget ? Liveness::expired : Liveness::live;
  }

  int128 now = local_now_s;
  if (static_cast<int128>(bundle.creation_ts) >
      now + static_cast<int128>(policy.future_tolerance_s))
    return Liveness::invalid_future_timestamp;
  return now > deadline_s(bundle) ? Liveness::expired : Liveness::live;
}

Bundle accumulate_age(Bundle bundle, std::uint64_t residence_ms) {
  if (!bundle.age_ms)
    throw Error(Error::Kind::no_age_block,
                "accumulate_age on a bundle without an age block: " + id_of(bundle).str());
  // Saturate rather than wrap; an age near 2^64 ms is already past any lifetime.
  std::uint64_t age = *bundle.age_ms;
  bundle.age_ms = age > UINT64_MAX - residence_ms ? UINT64_MAX : age + residence_ms;
  return bundle;
}

std::int64_t remaining_lifetime_ms(const Bundle& bundle, std::int64_t local_now_s) {
  if (is_expired(bundle, local_now_s, ExpiryPolicy{UINT64_MAX}) != Liveness::live)
    throw Error(Error::Kind::already_expired,
                "remaining_lifetime on expired bundle: " + id_of(bundle).str());

  int128 remaining;
  if (bundle.age_ms) {
    remaining = static_cast<int128>(bundle.lifetime_s) * 1000 -
                static_cast<int128>(*bundle.age_ms);
  } else {
    remaining = (deadline_s(bundle) - static_cast<int128>(local_now_s)) * 1000;
  }
  if (remaining > INT64_MAX) return INT64_MAX;
  return static_cast<std::int64_t>(remaining);
}

std::uint64_t CreationClock::take(std::uint64_t creation_ts) {
  auto ts = static_cast<std::int64_t>(creation_ts);
  if (ts != last_ts) {
    last_ts = ts;
    next_seq = 0;
  }
  return next_seq++;
}

Bundle new_bundle(const EndpointId& source, const EndpointId& destination,
                  std::uint64_t lifetime_s, Bytes payload,
                  std::int64_t local_now_s, bool with_age_block,
                  CreationClock& sequencer) {
  if (lifetime_s == 0)
    throw Error(Error::Kind::invalid_lifetime, "bundle lifetime must be positive");
  if (local_now_s < 0)
    throw Error(Error::Kind::validation_error,
                "creation clock reads " + std::to_string(local_now_s) +
                    " s, before the epoch");

  Bundle b;
  b.source = source;
  b.destination = destination;
  b.creation_ts = static_cast<std::uint64_t>(local_now_s);
  b.creation_seq = sequencer.take(b.creation_ts);
  b.lifetime_s = lifetime_s;
  if (with_age_block) b.age_ms = 0;
  b.payload = std::move(payload);
  return b;
}

}  // namespace dtn
