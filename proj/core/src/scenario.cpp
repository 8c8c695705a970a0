#include "dtn/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "dtn/endpoint.hpp"
#include "dtn/errors.hpp"

namespace dtn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw Error(Error::Kind::validation_error, path + ": " + why);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) fail(path + "." + it.key(), "unknown field");
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

json need_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

std::string get_string(const json& j, const char* key, const std::string& path) {
  const json* v = find(j, key);
  if (!v) fail(path + "." + key, "missing");
  if (!v->is_string()) fail(path + "." + key, "expected a string");
  return v->get<std::string>();
}

std::string opt_string(const json& j, const char* key, const std::string& path,
                       const std::string& fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string()) fail(path + "." + key, "expected a string");
  return v->get<std::string>();
}

std::uint64_t opt_u64(const json& j, const char* key, const std::string& path,
                      std::uint64_t fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number_unsigned())
    fail(path + "." + key, "expected a non-negative integer");
  return v->get<std::uint64_t>();
}

std::uint64_t get_u64(const json& j, const char* key, const std::string& path) {
  if (!find(j, key)) fail(path + "." + key, "missing");
  return opt_u64(j, key, path, 0);
}

std::int64_t opt_i64(const json& j, const char* key, const std::string& path,
                     std::int64_t fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer() && !v->is_number_unsigned())
    fail(path + "." + key, "expected an integer");
  return v->get<std::int64_t>();
}

double opt_double(const json& j, const char* key, const std::string& path,
                  double fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number()) fail(path + "." + key, "expected a number");
  return v->get<double>();
}

double get_double(const json& j, const char* key, const std::string& path) {
  if (!find(j, key)) fail(path + "." + key, "missing");
  return opt_double(j, key, path, 0);
}

bool opt_bool(const json& j, const char* key, const std::string& path,
              bool fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(path + "." + key, "expected a boolean");
  return v->get<bool>();
}

Bytes parse_key_hex(const std::string& hex, const std::string& path) {
  try {
    return from_hex(hex);
  } catch (const Error&) {
    fail(path, "not a hex string");
  }
}

std::map<std::string, std::string> get_string_map(const json& j, const char* key,
                                                  const std::string& path) {
  std::map<std::string, std::string> out;
  const json* v = find(j, key);
  if (!v) return out;
  if (!v->is_object()) fail(path + "." + key, "expected an object");
  for (auto it = v->begin(); it != v->end(); ++it) {
    if (!it.value().is_string())
      fail(path + "." + key + "." + it.key(), "expected a string");
    out[it.key()] = it.value().get<std::string>();
  }
  return out;
}

Mutation mutation_from_json(const json& j, const std::string& path) {
  need_object(j, path);
  check_keys(j, path, {"kind", "lifetime_s", "block_type", "body_offset", "xor_mask"});
  Mutation m;
  std::string kind = get_string(j, "kind", path);
  if (kind == "set_lifetime") {
    m.kind = Mutation::Kind::set_lifetime;
    m.lifetime_s = get_u64(j, "lifetime_s", path);
  } else if (kind == "edit_block_body") {
    m.kind = Mutation::Kind::edit_block_body;
    std::uint64_t type = get_u64(j, "block_type", path);
    if (type > 255) fail(path + ".block_type", "expected 0..255");
    m.block_type = static_cast<std::uint8_t>(type);
    m.body_offset = static_cast<std::size_t>(opt_u64(j, "body_offset", path, 0));
    std::uint64_t mask = opt_u64(j, "xor_mask", path, 0xFF);
    if (mask == 0 || mask > 255) fail(path + ".xor_mask", "expected 1..255");
    m.xor_mask = static_cast<std::uint8_t>(mask);
  } else {
    fail(path + ".kind", "expected set_lifetime or edit_block_body");
  }
  return m;
}

json mutation_to_json(const Mutation& m) {
  json j;
  switch (m.kind) {
    case Mutation::Kind::set_lifetime:
      j["kind"] = "set_lifetime";
      j["lifetime_s"] = m.lifetime_s;
      break;
    case Mutation::Kind::edit_block_body:
      j["kind"] = "edit_block_body";
      j["block_type"] = m.block_type;
      j["body_offset"] = m.body_offset;
      j["xor_mask"] = m.xor_mask;
      break;
  }
  return j;
}

}  // namespace

NodeConfig node_from_json(const json& j, const std::string& path) {
  need_object(j, path);
  check_keys(j, path,
             {"node_id", "clock", "policy", "expiry", "routes", "storage_limit",
              "age_block_default", "tamper", "peers"});

  NodeConfig n;
  n.node_id = get_string(j, "node_id", path);
  if (n.node_id.empty()) fail(path + ".node_id", "empty");

  if (const json* clock = find(j, "clock")) {
    std::string cpath = path + ".clock";
    need_object(*clock, cpath);
    check_keys(*clock, cpath, {"offset_s", "drift"});
    n.clock.offset_s = opt_i64(*clock, "offset_s", cpath, 0);
    n.clock.drift = opt_double(*clock, "drift", cpath, 0.0);
    if (!(n.clock.drift > -1.0 && n.clock.drift < 1.0))
      fail(cpath + ".drift", "expected a fraction in (-1, 1)");
  }

  if (const json* policy = find(j, "policy")) {
    std::string ppath = path + ".policy";
    need_object(*policy, ppath);
    check_keys(*policy, ppath, {"mode", "key_hex"});
    std::string mode = opt_string(*policy, "mode", ppath, "none");
    if (mode == "none") n.policy.mode = PolicyMode::none;
    else if (mode == "reliability") n.policy.mode = PolicyMode::reliability;
    else if (mode == "authenticated") n.policy.mode = PolicyMode::authenticated;
    else fail(ppath + ".mode", "expected none, reliability, or authenticated");
    std::string key_hex = opt_string(*policy, "key_hex", ppath, "");
    if (!key_hex.empty())
      n.policy.key = parse_key_hex(key_hex, ppath + ".key_hex");
    if (n.policy.mode == PolicyMode::authenticated && !n.policy.key)
      fail(ppath, "authenticated mode requires key_hex");
  }

  if (const json* expiry = find(j, "expiry")) {
    std::string epath = path + ".expiry";
    need_object(*expiry, epath);
    check_keys(*expiry, epath, {"future_tolerance_s"});
    n.expiry.future_tolerance_s = opt_u64(*expiry, "future_tolerance_s", epath, 0);
  }

  n.routes = get_string_map(j, "routes", path);
  n.storage_limit = opt_u64(j, "storage_limit", path, 1);
  if (n.storage_limit == 0) fail(path + ".storage_limit", "expected at least 1");
  n.age_block_default = opt_bool(j, "age_block_default", path, false);
  if (const json* tamper = find(j, "tamper"))
    n.tamper = mutation_from_json(*tamper, path + ".tamper");
  n.peers = get_string_map(j, "peers", path);
  return n;
}

json node_to_json(const NodeConfig& n) {
  json j;
  j["node_id"] = n.node_id;
  j["clock"] = {{"offset_s", n.clock.offset_s}, {"drift", n.clock.drift}};
  json policy;
  policy["mode"] = to_string(n.policy.mode);
  if (n.policy.key) policy["key_hex"] = to_hex(as_span(*n.policy.key));
  j["policy"] = policy;
  j["expiry"] = {{"future_tolerance_s", n.expiry.future_tolerance_s}};
  j["routes"] = json::object();
  for (const auto& [dest, hop] : n.routes) j["routes"][dest] = hop;
  j["storage_limit"] = n.storage_limit;
  j["age_block_default"] = n.age_block_default;
  if (n.tamper) j["tamper"] = mutation_to_json(*n.tamper);
  if (!n.peers.empty()) {
    j["peers"] = json::object();
    for (const auto& [node, addr] : n.peers) j["peers"][node] = addr;
  }
  return j;
}

NodeConfig load_node_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::io_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(Error::Kind::parse_error, path + ": " + e.what());
  }
  return node_from_json(j, "node");
}

Scenario scenario_from_json(const json& j) {
  need_object(j, "scenario");
  check_keys(j, "scenario",
             {"name", "seed", "duration_s", "nodes", "contacts", "faults", "traffic"});

  Scenario s;
  s.name = opt_string(j, "name", "scenario", "");
  s.seed = opt_u64(j, "seed", "scenario", 1);
  s.duration_s = get_double(j, "duration_s", "scenario");

  const json* nodes = find(j, "nodes");
  if (!nodes) fail("scenario.nodes", "missing");
  if (!nodes->is_array()) fail("scenario.nodes", "expected an array");
  for (std::size_t i = 0; i < nodes->size(); ++i)
    s.nodes.push_back(node_from_json((*nodes)[i], "nodes[" + std::to_string(i) + "]"));

  if (const json* contacts = find(j, "contacts")) {
    if (!contacts->is_array()) fail("scenario.contacts", "expected an array");
    for (std::size_t i = 0; i < contacts->size(); ++i) {
      std::string path = "contacts[" + std::to_string(i) + "]";
      const json& cj = (*contacts)[i];
      need_object(cj, path);
      check_keys(cj, path, {"from", "to", "open_s", "close_s", "delay_s"});
      Contact c;
      c.from = get_string(cj, "from", path);
      c.to = get_string(cj, "to", path);
      c.open_s = get_double(cj, "open_s", path);
      c.close_s = get_double(cj, "close_s", path);
      c.delay_s = opt_double(cj, "delay_s", path, 0);
      s.contacts.push_back(std::move(c));
    }
  }

  if (const json* faults = find(j, "faults")) {
    if (!faults->is_array()) fail("scenario.faults", "expected an array");
    for (std::size_t i = 0; i < faults->size(); ++i) {
      std::string path = "faults[" + std::to_string(i) + "]";
      const json& fj = (*faults)[i];
      need_object(fj, path);
      check_keys(fj, path,
                 {"from", "to", "transit_ber", "storage_corrupt_prob",
                  "storage_flip_bits", "rng_seed"});
      LinkFault f;
      f.from = get_string(fj, "from", path);
      f.to = get_string(fj, "to", path);
      f.model.transit_ber = opt_double(fj, "transit_ber", path, 0);
      f.model.storage_corrupt_prob = opt_double(fj, "storage_corrupt_prob", path, 0);
      std::uint64_t flips = opt_u64(fj, "storage_flip_bits", path, 1);
      if (flips == 0 || flips > 0xFFFFFFFFull)
        fail(path + ".storage_flip_bits", "expected at least 1");
      f.model.storage_flip_bits = static_cast<std::uint32_t>(flips);
      f.model.rng_seed = opt_u64(fj, "rng_seed", path, 0);
      s.faults.push_back(std::move(f));
    }
  }

  if (const json* traffic = find(j, "traffic")) {
    if (!traffic->is_array()) fail("scenario.traffic", "expected an array");
    for (std::size_t i = 0; i < traffic->size(); ++i) {
      std::string path = "traffic[" + std::to_string(i) + "]";
      const json& tj = (*traffic)[i];
      need_object(tj, path);
      check_keys(tj, path,
                 {"source", "destination", "payload_bytes", "creation_s",
                  "lifetime_s", "count", "interval_s", "suite", "coverage",
                  "key_hex", "age_block"});
      TrafficItem t;
      t.source = get_string(tj, "source", path);
      t.destination = get_string(tj, "destination", path);
      t.payload_bytes = opt_u64(tj, "payload_bytes", path, 0);
      t.creation_s = get_double(tj, "creation_s", path);
      t.lifetime_s = get_u64(tj, "lifetime_s", path);
      std::uint64_t count = opt_u64(tj, "count", path, 1);
      if (count == 0 || count > 0xFFFFFFFFull)
        fail(path + ".count", "expected at least 1");
      t.count = static_cast<std::uint32_t>(count);
      t.interval_s = opt_double(tj, "interval_s", path, 0);
      std::uint64_t suite = opt_u64(tj, "suite", path, 0);
      if (suite > 2) fail(path + ".suite", "expected 0, 1, or 2");
      t.suite = static_cast<std::uint8_t>(suite);
      std::uint64_t coverage = opt_u64(tj, "coverage", path, kCoverPayload);
      if (coverage == 0 || coverage > (kCoverPrimary | kCoverPayload))
        fail(path + ".coverage", "expected 1, 2, or 3");
      t.coverage = static_cast<std::uint8_t>(coverage);
      t.key_hex = opt_string(tj, "key_hex", path, "");
      t.age_block = opt_bool(tj, "age_block", path, false);
      s.traffic.push_back(std::move(t));
    }
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["seed"] = s.seed;
  j["duration_s"] = s.duration_s;
  j["nodes"] = json::array();
  for (const NodeConfig& n : s.nodes) j["nodes"].push_back(node_to_json(n));
  j["contacts"] = json::array();
  for (const Contact& c : s.contacts)
    j["contacts"].push_back({{"from", c.from},
                             {"to", c.to},
                             {"open_s", c.open_s},
                             {"close_s", c.close_s},
                             {"delay_s", c.delay_s}});
  j["faults"] = json::array();
  for (const LinkFault& f : s.faults)
    j["faults"].push_back({{"from", f.from},
                           {"to", f.to},
                           {"transit_ber", f.model.transit_ber},
                           {"storage_corrupt_prob", f.model.storage_corrupt_prob},
                           {"storage_flip_bits", f.model.storage_flip_bits},
                           {"rng_seed", f.model.rng_seed}});
  j["traffic"] = json::array();
  for (const TrafficItem& t : s.traffic) {
    json tj;
    tj["source"] = t.source;
    tj["destination"] = t.destination;
    tj["payload_bytes"] = t.payload_bytes;
    tj["creation_s"] = t.creation_s;
    tj["lifetime_s"] = t.lifetime_s;
    tj["count"] = t.count;
    tj["interval_s"] = t.interval_s;
    tj["suite"] = t.suite;
    tj["coverage"] = t.coverage;
    if (!t.key_hex.empty()) tj["key_hex"] = t.key_hex;
    tj["age_block"] = t.age_block;
    j["traffic"].push_back(std::move(tj));
  }
  return j;
}

void validate_scenario(const Scenario& s) {
  if (!(s.duration_s > 0)) fail("scenario.duration_s", "expected a positive duration");

  std::set<std::string> ids;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const NodeConfig& n = s.nodes[i];
    std::string path = "nodes[" + std::to_string(i) + "]";
    if (!ids.insert(n.node_id).second)
      fail(path + ".node_id", "duplicate node id '" + n.node_id + "'");
  }
  if (ids.empty()) fail("scenario.nodes", "expected at least one node");

  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const NodeConfig& n = s.nodes[i];
    std::string path = "nodes[" + std::to_string(i) + "].routes";
    for (const auto& [dest, hop] : n.routes) {
      if (!ids.count(dest)) fail(path, "unknown destination node '" + dest + "'");
      if (!ids.count(hop)) fail(path, "unknown next hop '" + hop + "'");
      if (hop == n.node_id)
        fail(path, "node '" + n.node_id + "' routes '" + dest + "' to itself");
    }
  }

  for (std::size_t i = 0; i < s.contacts.size(); ++i) {
    const Contact& c = s.contacts[i];
    std::string path = "contacts[" + std::to_string(i) + "]";
    if (!ids.count(c.from)) fail(path + ".from", "unknown node '" + c.from + "'");
    if (!ids.count(c.to)) fail(path + ".to", "unknown node '" + c.to + "'");
    if (c.from == c.to) fail(path, "contact loops back to '" + c.from + "'");
    if (c.open_s < 0) fail(path + ".open_s", "expected a non-negative time");
    if (!(c.close_s > c.open_s)) fail(path + ".close_s", "window closes before it opens");
    if (c.delay_s < 0) fail(path + ".delay_s", "expected a non-negative delay");
  }

  std::set<std::pair<std::string, std::string>> fault_links;
  for (std::size_t i = 0; i < s.faults.size(); ++i) {
    const LinkFault& f = s.faults[i];
    std::string path = "faults[" + std::to_string(i) + "]";
    if (!ids.count(f.from)) fail(path + ".from", "unknown node '" + f.from + "'");
    if (!ids.count(f.to)) fail(path + ".to", "unknown node '" + f.to + "'");
    if (!fault_links.insert({f.from, f.to}).second)
      fail(path, "second fault entry for link " + f.from + "->" + f.to);
    if (!(f.model.transit_ber >= 0 && f.model.transit_ber < 1))
      fail(path + ".transit_ber", "expected a rate in [0, 1)");
    if (!(f.model.storage_corrupt_prob >= 0 && f.model.storage_corrupt_prob <= 1))
      fail(path + ".storage_corrupt_prob", "expected a probability in [0, 1]");
  }

  std::map<std::string, const NodeConfig*> by_id;
  for (const NodeConfig& n : s.nodes) by_id[n.node_id] = &n;

  std::set<std::string> dest_nodes;
  for (std::size_t i = 0; i < s.traffic.size(); ++i) {
    const TrafficItem& t = s.traffic[i];
    std::string path = "traffic[" + std::to_string(i) + "]";
    auto src = EndpointId::parse(t.source);
    if (!src.ok()) fail(path + ".source", src.error().detail);
    auto dst = EndpointId::parse(t.destination);
    if (!dst.ok()) fail(path + ".destination", dst.error().detail);
    if (src.value().is_null()) fail(path + ".source", "null endpoint");
    if (dst.value().is_null()) fail(path + ".destination", "null endpoint");
    std::string src_node(src.value().node());
    std::string dst_node(dst.value().node());
    if (!ids.count(src_node)) fail(path + ".source", "unknown node '" + src_node + "'");
    if (!ids.count(dst_node))
      fail(path + ".destination", "unknown node '" + dst_node + "'");
    dest_nodes.insert(dst_node);
    // local_s is monotone in true time (drift > -1), so the first instance
    // is the earliest local reading
    std::int64_t first_ms = static_cast<std::int64_t>(std::llround(t.creation_s * 1000));
    if (by_id.at(src_node)->clock.local_s(first_ms) < 0)
      fail(path + ".creation_s",
           "source clock reads a negative time at creation; bundles cannot be stamped");
    if (t.lifetime_s == 0) fail(path + ".lifetime_s", "expected at least 1");
    if (t.creation_s < 0) fail(path + ".creation_s", "expected a non-negative time");
    if (t.interval_s < 0) fail(path + ".interval_s", "expected a non-negative interval");
    double last = t.creation_s + (t.count - 1) * t.interval_s;
    if (last >= s.duration_s)
      fail(path, "creation at " + std::to_string(last) +
                     "s falls outside the scenario duration");
    if (t.suite == kSuiteHmacSha256 && t.key_hex.empty())
      fail(path + ".key_hex", "suite 2 needs a key");
    if (!t.key_hex.empty()) parse_key_hex(t.key_hex, path + ".key_hex");
  }

  for (const std::string& dest : dest_nodes) {
    for (const NodeConfig& n : s.nodes) {
      std::string cur = n.node_id;
      std::size_t hops = 0;
      while (cur != dest) {
        auto node = by_id.find(cur);
        if (node == by_id.end()) break;
        auto hop = node->second->routes.find(dest);
        if (hop == node->second->routes.end()) break;
        cur = hop->second;
        if (++hops > s.nodes.size())
          fail("scenario.nodes", "routes toward '" + dest + "' form a cycle");
      }
    }
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::io_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(Error::Kind::parse_error, path + ": " + e.what());
  }
  Scenario s = scenario_from_json(j);
  validate_scenario(s);
  return s;
}

}  // namespace dtn
