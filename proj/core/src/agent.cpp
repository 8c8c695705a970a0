#include "dtn/agent.hpp"

#include <algorithm>
#include <utility>

namespace dtn {

Agent::Agent(NodeConfig config) : config_(std::move(config)) {
  if (config_.storage_limit == 0) config_.storage_limit = 1;
}

Disposition Agent::receive(const Bundle& bundle, Bytes image, PayloadRegion payload,
                           std::int64_t true_now_ms, std::uint64_t tag) {
  std::int64_t local_s = config_.clock.local_s(true_now_ms);
  switch (is_expired(bundle, local_s, config_.expiry)) {
    case Liveness::expired:
      return Disposition::dropped_expired;
    case Liveness::invalid_future_timestamp:
      return Disposition::dropped_invalid_timestamp;
    case Liveness::live:
      break;
  }

  switch (verify(bundle, config_.policy)) {
    case Verdict::fail_mismatch:
    case Verdict::fail_absent:
      return Disposition::dropped_integrity;
    case Verdict::pass:
    case Verdict::skipped:
      break;
  }

  if (bundle.destination.node() == config_.node_id) {
    if (deliver_) deliver_(bundle, image, tag);
    return Disposition::delivered;
  }

  if (store_.size() >= config_.storage_limit)
    return Disposition::dropped_storage_full;

  StoredBundle stored;
  stored.image = std::move(image);
  stored.payload = payload;
  stored.dest_node = std::string(bundle.destination.node());
  stored.arrival_ms = true_now_ms;
  stored.tag = tag;
  store_.push_back(std::move(stored));
  return Disposition::queued;
}

DispatchResult Agent::dispatch(std::int64_t true_now_ms, const ContactQuery& open) {
  DispatchResult result;

  struct Candidate {
    Transmission tx;
    std::int64_t remaining_ms;
  };
  std::vector<Candidate> candidates;
  std::vector<StoredBundle> keep;
  keep.reserve(store_.size());

  std::int64_t local_s = config_.clock.local_s(true_now_ms);

  for (StoredBundle& stored : store_) {
    auto route = config_.routes.find(stored.dest_node);
    if (route == config_.routes.end() || !open(route->second)) {
      keep.push_back(std::move(stored));  // not a candidate; left untouched
      continue;
    }

    auto decoded = decode_bundle_ex(as_span(stored.image));
    if (!decoded.ok()) {
      result.drops.push_back({Disposition::dropped_decode_error, BundleId{}, stored.tag});
      continue;
    }
    Bundle bundle = std::move(decoded.value().bundle);
    PayloadRegion payload = decoded.value().payload;

    bool reencode = false;
    if (bundle.age_ms) {
      std::int64_t residence = true_now_ms - stored.arrival_ms;
      std::uint64_t measured =
          static_cast<std::uint64_t>(config_.clock.measured_ms(residence));
      if (measured > 0) {
        bundle = accumulate_age(std::move(bundle), measured);
        reencode = true;
      }
    }

    switch (is_expired(bundle, local_s, config_.expiry)) {
      case Liveness::expired:
        result.drops.push_back({Disposition::dropped_expired, id_of(bundle), stored.tag});
        continue;
      case Liveness::invalid_future_timestamp:
        result.drops.push_back(
            {Disposition::dropped_invalid_timestamp, id_of(bundle), stored.tag});
        continue;
      case Liveness::live:
        break;
    }

    std::int64_t remaining = remaining_lifetime_ms(bundle, local_s);

    bool tampered = false;
    if (config_.tamper) {
      bundle = mutate_in_transit(std::move(bundle), *config_.tamper);
      reencode = true;
      tampered = true;
    }

    Candidate c;
    c.tx.next_hop = route->second;
    c.tx.id = id_of(bundle);
    c.tx.tag = stored.tag;
    c.tx.tampered = tampered;
    if (reencode) {
      c.tx.image = encode_bundle(bundle, &c.tx.payload);
    } else {
      c.tx.image = std::move(stored.image);
      c.tx.payload = payload;
    }
    c.remaining_ms = remaining;
    candidates.push_back(std::move(c));
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.remaining_ms < b.remaining_ms;
                   });
  result.transmissions.reserve(candidates.size());
  for (Candidate& c : candidates)
    result.transmissions.push_back(std::move(c.tx));

  store_ = std::move(keep);
  return result;
}

}  // namespace dtn
