#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dtn/node.hpp"
#include "dtn/wire.hpp"

namespace dtn {

// A bundle at rest. The serialized image is the source of truth: dispatch
// re-decodes it, so storage corruption behaves exactly like wire corruption.
struct StoredBundle {
  Bytes image;
  PayloadRegion payload;        // offsets into image as last encoded/received
  std::string dest_node;
  std::int64_t arrival_ms = 0;  // true time; residence measured from here
  std::uint64_t tag = 0;        // opaque harness cookie, 0 in live mode
};

struct Transmission {
  std::string next_hop;
  Bytes image;
  PayloadRegion payload;
  BundleId id;
  std::uint64_t tag = 0;
  bool tampered = false;
};

struct DroppedBundle {
  Disposition cause = Disposition::dropped_expired;
  BundleId id;
  std::uint64_t tag = 0;
};

struct DispatchResult {
  std::vector<Transmission> transmissions;
  std::vector<DroppedBundle> drops;
};

// Answers "is there an open contact to this next hop right now".
using ContactQuery = std::function<bool(const std::string& next_hop)>;

// Store-and-forward node: fixed next-hop routes, bounded storage, expiry
// checked on receive and again on dispatch, verification at every hop.
class Agent {
 public:
  using DeliverFn =
      std::function<void(const Bundle& bundle, const Bytes& image, std::uint64_t tag)>;

  explicit Agent(NodeConfig config);

  const NodeConfig& config() const { return config_; }

  void set_deliver_handler(DeliverFn fn) { deliver_ = std::move(fn); }

  // Receive order: expiry by the local clock, then verification per policy,
  // then deliver (destination here) or queue. A full store drops the
  // arriving bundle; nothing already queued is evicted.
  Disposition receive(const Bundle& bundle, Bytes image, PayloadRegion payload,
                      std::int64_t true_now_ms, std::uint64_t tag = 0);

  // Forwards every queued bundle whose next hop has an open contact:
  // age accumulates by residence, expiry is re-checked (expired bundles are
  // dropped, never transmitted), survivors go out in ascending remaining
  // lifetime. Transmission delay is not part of age.
  DispatchResult dispatch(std::int64_t true_now_ms, const ContactQuery& open);

  // Mutable so the harness can model storage decay and a live node can
  // requeue after a failed send.
  std::vector<StoredBundle>& store() { return store_; }
  const std::vector<StoredBundle>& store() const { return store_; }

  CreationClock& sequencer() { return sequencer_; }

 private:
  NodeConfig config_;
  std::vector<StoredBundle> store_;
  CreationClock sequencer_;
  DeliverFn deliver_;
};

}  // namespace dtn
