#include "dtn/simulator.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "dtn/agent.hpp"
#include "dtn/endpoint.hpp"
#include "dtn/errors.hpp"
#include "dtn/integrity.hpp"
#include "dtn/wire.hpp"

namespace dtn {

std::uint64_t Counters::dropped_total() const {
  return dropped_expired + dropped_invalid_timestamp + dropped_integrity +
         dropped_decode_error + dropped_storage_full;
}

bool Metrics::conserved() const {
  return total.created == total.delivered_clean + total.delivered_corrupt_undetected +
                              total.dropped_total() + total.queued_at_end;
}

std::string EventTrace::to_jsonl() const {
  std::ostringstream out;
  for (const TraceRecord& r : records) {
    nlohmann::json j;
    j["time_ms"] = r.time_ms;
    j["node"] = r.node;
    j["event"] = r.event;
    j["bundle"] = r.bundle;
    j["detail"] = r.detail;
    out << j.dump() << "\n";
  }
  return out.str();
}

namespace {

std::int64_t to_ms(double seconds) {
  return std::llround(seconds * 1000.0);
}

// Priorities at equal time. Closes land before opens so a window touching
// [t, t) is never briefly usable; arrivals land last so the bytes already in
// flight see the world the contacts left behind.
enum Prio : int { kClose = 0, kOpen = 1, kCreation = 2, kArrival = 3 };

struct Event {
  std::int64_t time_ms = 0;
  int prio = 0;
  std::uint64_t seq = 0;       // push order, final tiebreak
  std::size_t index = 0;       // contact or traffic index
  std::uint32_t instance = 0;  // creation instance
  std::string to;              // arrival
  Bytes image;
  PayloadRegion payload;
  std::uint64_t tag = 0;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time_ms != b.time_ms) return a.time_ms > b.time_ms;
    if (a.prio != b.prio) return a.prio > b.prio;
    return a.seq > b.seq;
  }
};

struct Truth {
  std::string uid;
  Bytes payload;
  bool corrupted = false;
  bool corrupted_payload = false;
  Disposition final_disposition = Disposition::queued;
  std::string final_node;
};

struct LinkState {
  FaultModel model;
  std::uint64_t base_seed = 0;
  Rng storage_rng{0};
  std::map<std::uint64_t, std::uint64_t> attempts;  // tag -> transmissions so far
};

class Sim {
 public:
  explicit Sim(const Scenario& s) : s_(s) {}

  RunResult run() {
    for (const NodeConfig& n : s_.nodes) {
      agents_.emplace(n.node_id, Agent(n));
      per_node_[n.node_id] = Counters{};
    }
    for (const LinkFault& f : s_.faults) {
      LinkState link;
      link.model = f.model;
      link.base_seed = f.model.rng_seed
                           ? f.model.rng_seed
                           : mix_seed(s_.seed, hash_str(f.from + '\0' + f.to));
      link.storage_rng = Rng(mix_seed(link.base_seed, hash_str("storage")));
      links_.emplace(std::make_pair(f.from, f.to), std::move(link));
    }

    const std::int64_t end_ms = to_ms(s_.duration_s);
    for (std::size_t i = 0; i < s_.contacts.size(); ++i) {
      push({to_ms(s_.contacts[i].open_s), kOpen, 0, i});
      push({to_ms(s_.contacts[i].close_s), kClose, 0, i});
    }
    for (std::size_t i = 0; i < s_.traffic.size(); ++i)
      for (std::uint32_t k = 0; k < s_.traffic[i].count; ++k)
        push({to_ms(s_.traffic[i].creation_s + k * s_.traffic[i].interval_s),
              kCreation, 0, i, k});

    while (!queue_.empty() && queue_.top().time_ms <= end_ms) {
      Event ev = queue_.top();
      queue_.pop();
      switch (ev.prio) {
        case kClose: on_contact(ev, false); break;
        case kOpen: on_contact(ev, true); break;
        case kCreation: on_creation(ev); break;
        case kArrival: on_arrival(ev); break;
      }
    }

    // Whatever never reached a verdict is still queued: in a store, or in
    // flight on a link the clock ran out on.
    for (auto& [id, agent] : agents_) {
      for (const StoredBundle& sb : agent.store()) {
        per_node_[id].queued_at_end += 1;
        truth_[sb.tag].final_node = id;
      }
    }
    while (!queue_.empty()) {
      const Event& ev = queue_.top();
      if (ev.prio == kArrival) {
        per_node_[ev.to].queued_at_end += 1;
        truth_[ev.tag].final_node = ev.to;
      }
      queue_.pop();
    }

    RunResult result;
    result.trace.records = std::move(trace_);
    for (const auto& [id, counters] : per_node_) {
      result.metrics.per_node[id] = counters;
      accumulate(result.metrics.total, counters);
    }
    result.outcomes.reserve(truth_.size());
    for (std::size_t tag = 0; tag < truth_.size(); ++tag) {
      const Truth& t = truth_[tag];
      result.outcomes.push_back({tag, t.uid, t.final_disposition, t.final_node,
                                 t.corrupted, t.corrupted_payload});
    }
    if (!result.metrics.conserved())
      throw std::logic_error("bundle conservation violated in scenario '" +
                             s_.name + "'");
    return result;
  }

 private:
  using LinkKey = std::pair<std::string, std::string>;

  void push(Event ev) {
    ev.seq = next_seq_++;
    queue_.push(std::move(ev));
  }

  void record(std::int64_t time_ms, const std::string& node, std::string event,
              std::string bundle, std::string detail) {
    trace_.push_back(
        {time_ms, node, std::move(event), std::move(bundle), std::move(detail)});
  }

  static void accumulate(Counters& into, const Counters& from) {
    into.created += from.created;
    into.delivered_clean += from.delivered_clean;
    into.delivered_corrupt_undetected += from.delivered_corrupt_undetected;
    into.dropped_expired += from.dropped_expired;
    into.dropped_invalid_timestamp += from.dropped_invalid_timestamp;
    into.dropped_integrity += from.dropped_integrity;
    into.dropped_decode_error += from.dropped_decode_error;
    into.dropped_storage_full += from.dropped_storage_full;
    into.queued_at_end += from.queued_at_end;
  }

  void count_drop(const std::string& node, Disposition cause) {
    Counters& c = per_node_[node];
    switch (cause) {
      case Disposition::dropped_expired: c.dropped_expired += 1; break;
      case Disposition::dropped_invalid_timestamp:
        c.dropped_invalid_timestamp += 1;
        break;
      case Disposition::dropped_integrity: c.dropped_integrity += 1; break;
      case Disposition::dropped_decode_error: c.dropped_decode_error += 1; break;
      case Disposition::dropped_storage_full: c.dropped_storage_full += 1; break;
      default: throw std::logic_error("not a drop cause");
    }
  }

  void settle(std::uint64_t tag, Disposition cause, const std::string& node) {
    Truth& t = truth_[tag];
    t.final_disposition = cause;
    t.final_node = node;
  }

  void on_contact(const Event& ev, bool open) {
    const Contact& c = s_.contacts[ev.index];
    open_count_[{c.from, c.to}] += open ? 1 : -1;
    record(ev.time_ms, c.from, open ? "contact_open" : "contact_close", "", c.to);
    if (open) dispatch(c.from, ev.time_ms);
  }

  void on_creation(const Event& ev) {
    const TrafficItem& t = s_.traffic[ev.index];
    EndpointId source = EndpointId::parse(t.source).value();
    EndpointId destination = EndpointId::parse(t.destination).value();
    std::string src_node(source.node());
    Agent& agent = agents_.at(src_node);

    std::uint64_t tag = truth_.size();
    Bytes payload(t.payload_bytes);
    Rng prng(mix_seed(mix_seed(s_.seed, hash_str("payload")), tag));
    for (std::uint8_t& byte : payload)
      byte = static_cast<std::uint8_t>(prng.next());

    std::int64_t local_s = agent.config().clock.local_s(ev.time_ms);
    bool with_age = t.age_block || agent.config().age_block_default;
    Bundle bundle = new_bundle(source, destination, t.lifetime_s, payload, local_s,
                               with_age, agent.sequencer());
    if (t.suite != 0) {
      std::optional<Bytes> key;
      if (!t.key_hex.empty()) key = from_hex(t.key_hex);
      bundle = attach_integrity(std::move(bundle), t.suite, t.coverage, key);
    }

    PayloadRegion region;
    Bytes image = encode_bundle(bundle, &region);

    Truth truth;
    truth.uid = id_of(bundle).str();
    truth.payload = std::move(payload);
    truth_.push_back(std::move(truth));

    per_node_[src_node].created += 1;
    record(ev.time_ms, src_node, "created", truth_[tag].uid, "dst=" + t.destination);

    if (agent.store().size() >= agent.config().storage_limit) {
      per_node_[src_node].dropped_storage_full += 1;
      settle(tag, Disposition::dropped_storage_full, src_node);
      record(ev.time_ms, src_node, "dropped_storage_full", truth_[tag].uid, "creation");
      return;
    }
    StoredBundle stored;
    stored.image = std::move(image);
    stored.payload = region;
    stored.dest_node = std::string(destination.node());
    stored.arrival_ms = ev.time_ms;
    stored.tag = tag;
    agent.store().push_back(std::move(stored));
    dispatch(src_node, ev.time_ms);
  }

  void on_arrival(const Event& ev) {
    const std::string& uid = truth_[ev.tag].uid;
    auto decoded = decode_bundle_ex(as_span(ev.image));
    if (!decoded.ok()) {
      per_node_[ev.to].dropped_decode_error += 1;
      settle(ev.tag, Disposition::dropped_decode_error, ev.to);
      record(ev.time_ms, ev.to, "dropped_decode_error", uid,
             to_string(decoded.error().code));
      return;
    }

    Agent& agent = agents_.at(ev.to);
    const Bundle& bundle = decoded.value().bundle;
    Disposition d = agent.receive(bundle, ev.image, decoded.value().payload,
                                  ev.time_ms, ev.tag);
    switch (d) {
      case Disposition::delivered: {
        bool clean = bundle.payload == truth_[ev.tag].payload;
        Counters& c = per_node_[ev.to];
        if (clean) c.delivered_clean += 1;
        else c.delivered_corrupt_undetected += 1;
        settle(ev.tag,
               clean ? Disposition::delivered : Disposition::delivered_corrupt_undetected,
               ev.to);
        record(ev.time_ms, ev.to,
               clean ? "delivered" : "delivered_corrupt_undetected", uid, "");
        break;
      }
      case Disposition::queued:
        record(ev.time_ms, ev.to, "queued", uid, "");
        dispatch(ev.to, ev.time_ms);
        break;
      default:
        count_drop(ev.to, d);
        settle(ev.tag, d, ev.to);
        record(ev.time_ms, ev.to, to_string(d), uid, "receive");
        break;
    }
  }

  // One forwarding pass: storage decay on routed bundles first, then the
  // agent's own dispatch, then transit faults per transmission.
  void dispatch(const std::string& node, std::int64_t now_ms) {
    Agent& agent = agents_.at(node);

    for (StoredBundle& sb : agent.store()) {
      auto route = agent.config().routes.find(sb.dest_node);
      if (route == agent.config().routes.end()) continue;
      auto link = links_.find({node, route->second});
      if (link == links_.end() || link->second.model.storage_corrupt_prob <= 0.0)
        continue;
      auto positions =
          storage_flip_positions(std::uint64_t{sb.image.size()} * 8,
                                 link->second.model, link->second.storage_rng);
      if (positions.empty()) continue;
      flip_bits(sb.image, positions);
      mark_corruption(sb.tag, positions, sb.payload);
      record(now_ms, node, "storage_corrupt", truth_[sb.tag].uid,
             std::to_string(positions.size()) + " bits");
    }

    auto open = [&](const std::string& next_hop) {
      auto it = open_count_.find({node, next_hop});
      return it != open_count_.end() && it->second > 0;
    };
    DispatchResult result = agent.dispatch(now_ms, open);

    for (const DroppedBundle& drop : result.drops) {
      count_drop(node, drop.cause);
      settle(drop.tag, drop.cause, node);
      record(now_ms, node, to_string(drop.cause), truth_[drop.tag].uid, "dispatch");
    }

    for (Transmission& tx : result.transmissions) {
      const Contact* contact = find_open_contact(node, tx.next_hop, now_ms);
      auto link = links_.find({node, tx.next_hop});
      if (link != links_.end() && link->second.model.transit_ber > 0.0) {
        std::uint64_t attempt = link->second.attempts[tx.tag]++;
        Rng stream(mix_seed(mix_seed(link->second.base_seed, tx.tag), attempt));
        auto positions =
            transit_flip_positions(std::uint64_t{tx.image.size()} * 8,
                                   link->second.model.transit_ber, stream);
        if (!positions.empty()) {
          flip_bits(tx.image, positions);
          mark_corruption(tx.tag, positions, tx.payload);
        }
      }
      record(now_ms, node, "transmit", truth_[tx.tag].uid, "to=" + tx.next_hop);

      Event arrival;
      arrival.time_ms = now_ms + to_ms(contact->delay_s);
      arrival.prio = kArrival;
      arrival.to = tx.next_hop;
      arrival.image = std::move(tx.image);
      arrival.payload = tx.payload;
      arrival.tag = tx.tag;
      push(std::move(arrival));
    }
  }

  const Contact* find_open_contact(const std::string& from, const std::string& to,
                                   std::int64_t now_ms) const {
    for (const Contact& c : s_.contacts)
      if (c.from == from && c.to == to && to_ms(c.open_s) <= now_ms &&
          now_ms < to_ms(c.close_s))
        return &c;
    throw std::logic_error("transmission without an open contact");
  }

  void mark_corruption(std::uint64_t tag, const std::vector<std::uint64_t>& positions,
                       const PayloadRegion& payload) {
    Truth& t = truth_[tag];
    t.corrupted = true;
    for (std::uint64_t pos : positions)
      if (payload.contains_bit(pos)) {
        t.corrupted_payload = true;
        break;
      }
  }

  const Scenario& s_;
  std::map<std::string, Agent> agents_;
  std::map<std::string, Counters> per_node_;
  std::map<LinkKey, LinkState> links_;
  std::map<LinkKey, int> open_count_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t next_seq_ = 0;
  std::vector<Truth> truth_;
  std::vector<TraceRecord> trace_;
};

}  // namespace

RunResult run(const Scenario& scenario) { return Sim(scenario).run(); }

}  // namespace dtn
