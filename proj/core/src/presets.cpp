#include "dtn/presets.hpp"

#include "dtn/errors.hpp"

namespace dtn {

namespace {

// silent_corruption and reliability_fix share this seed so both runs draw
// identical per-(link, bundle, attempt) fault streams; the comparison between
// the two is per-bundle, not merely statistical.
constexpr std::uint64_t kCorruptionSeed = 1;

NodeConfig node(std::string id, PolicyMode mode = PolicyMode::none,
                std::map<std::string, std::string> routes = {},
                std::uint64_t storage_limit = 64) {
  NodeConfig n;
  n.node_id = std::move(id);
  n.policy.mode = mode;
  n.routes = std::move(routes);
  n.storage_limit = storage_limit;
  return n;
}

Scenario baseline() {
  Scenario s;
  s.name = "baseline";
  s.seed = 1;
  s.duration_s = 60;
  s.nodes = {node("a", PolicyMode::none, {{"c", "b"}}),
             node("b", PolicyMode::reliability, {{"c", "c"}}),
             node("c", PolicyMode::reliability)};
  s.contacts = {{"a", "b", 0, 60, 0.05}, {"b", "c", 0, 60, 0.05}};
  TrafficItem t;
  t.source = "dtn:a/app";
  t.destination = "dtn:c/app";
  t.payload_bytes = 512;
  t.creation_s = 1;
  t.lifetime_s = 60;
  t.count = 50;
  t.interval_s = 0.5;
  t.suite = kSuiteCrc32;
  t.coverage = kCoverPrimary | kCoverPayload;
  s.traffic = {t};
  return s;
}

// 10 KiB payloads over one lossy hop, nobody checking: at BER 1e-5 each
// payload survives untouched with probability (1 - 1e-5)^81920, about 0.44,
// so most runs deliver several hundred corrupt payloads as if clean.
Scenario silent_corruption() {
  Scenario s;
  s.name = "silent_corruption";
  s.seed = kCorruptionSeed;
  s.duration_s = 200;
  s.nodes = {node("a", PolicyMode::none, {{"b", "b"}}, 16),
             node("b", PolicyMode::none)};
  s.contacts = {{"a", "b", 0, 200, 0.05}};
  LinkFault f;
  f.from = "a";
  f.to = "b";
  f.model.transit_ber = 1e-5;
  s.faults = {f};
  TrafficItem t;
  t.source = "dtn:a/app";
  t.destination = "dtn:b/app";
  t.payload_bytes = 10240;
  t.creation_s = 1;
  t.lifetime_s = 3600;
  t.count = 1000;
  t.interval_s = 0.1;
  s.traffic = {t};
  return s;
}

// Same topology, traffic, faults and seed; the only changes are a checksum
// on each bundle and a receiver that verifies it.
Scenario reliability_fix() {
  Scenario s = silent_corruption();
  s.name = "reliability_fix";
  s.nodes[1].policy.mode = PolicyMode::reliability;
  s.traffic[0].suite = kSuiteCrc32;
  s.traffic[0].coverage = kCoverPayload;
  return s;
}

// The source's clock runs 7200 s slow, so its bundles are born looking
// 7200 s old. With UTC expiry and a 3600 s lifetime the first correctly
// clocked hop judges every one of them long dead.
Scenario clock_skew() {
  Scenario s;
  s.name = "clock_skew";
  s.seed = 1;
  s.duration_s = 7500;
  s.nodes = {node("a", PolicyMode::none, {{"c", "b"}}, 8),
             node("b", PolicyMode::none, {{"c", "c"}}, 8),
             node("c", PolicyMode::none)};
  s.nodes[0].clock.offset_s = -7200;
  s.contacts = {{"a", "b", 7200, 7500, 0.05}, {"b", "c", 7200, 7500, 0.05}};
  TrafficItem t;
  t.source = "dtn:a/app";
  t.destination = "dtn:c/app";
  t.payload_bytes = 512;
  t.creation_s = 7300;
  t.lifetime_s = 3600;
  t.count = 100;
  t.interval_s = 0.1;
  s.traffic = {t};
  return s;
}

// Identical skewed topology; bundles carry an age block, so expiry is judged
// by accumulated age instead of wall-clock arithmetic.
Scenario age_fix() {
  Scenario s = clock_skew();
  s.name = "age_fix";
  s.traffic[0].age_block = true;
  return s;
}

// Relay b rewrites lifetime 60 -> 6 without touching the payload. Coverage
// that includes the primary fields catches the rewrite at c; payload-only
// coverage verifies clean and the bundles quietly expire in c's queue
// waiting for the 12 s contact.
Scenario tamper_relay() {
  Scenario s;
  s.name = "tamper_relay";
  s.seed = 1;
  s.duration_s = 20;
  s.nodes = {node("a", PolicyMode::none, {{"d", "b"}}, 8),
             node("b", PolicyMode::reliability, {{"d", "c"}}, 8),
             node("c", PolicyMode::reliability, {{"d", "d"}}, 128),
             node("d", PolicyMode::reliability)};
  Mutation m;
  m.kind = Mutation::Kind::set_lifetime;
  m.lifetime_s = 6;
  s.nodes[1].tamper = m;
  s.contacts = {{"a", "b", 0, 18, 0.05},
                {"b", "c", 0, 18, 0.05},
                {"c", "d", 12, 18, 0.05}};
  TrafficItem t;
  t.source = "dtn:a/app";
  t.destination = "dtn:d/app";
  t.payload_bytes = 512;
  t.creation_s = 1;
  t.lifetime_s = 60;
  t.count = 100;
  t.interval_s = 0.05;
  t.suite = kSuiteCrc32;
  t.coverage = kCoverPayload;
  s.traffic = {t};
  return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "baseline",  "silent_corruption", "reliability_fix",
      "clock_skew", "age_fix",          "tamper_relay"};
  return names;
}

Scenario preset(const std::string& name) {
  Scenario s;
  if (name == "baseline") s = baseline();
  else if (name == "silent_corruption") s = silent_corruption();
  else if (name == "reliability_fix") s = reliability_fix();
  else if (name == "clock_skew") s = clock_skew();
  else if (name == "age_fix") s = age_fix();
  else if (name == "tamper_relay") s = tamper_relay();
  else
    throw Error(Error::Kind::unknown_preset, "no preset named '" + name + "'");
  validate_scenario(s);
  return s;
}

}  // namespace dtn
