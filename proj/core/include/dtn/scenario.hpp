#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtn/fault.hpp"
#include "dtn/node.hpp"

namespace dtn {

// One directed transmission window. Half-open: a dispatch at exactly close_s
// finds the contact shut.
struct Contact {
  std::string from;
  std::string to;
  double open_s = 0;
  double close_s = 0;
  double delay_s = 0;  // link latency; never added to bundle age
};

struct LinkFault {
  std::string from;
  std::string to;
  FaultModel model;
};

// count bundles from one source, spaced interval_s apart starting at
// creation_s. suite 0 means no integrity block.
struct TrafficItem {
  std::string source;       // full EID, e.g. dtn:a/app
  std::string destination;
  std::uint64_t payload_bytes = 0;
  double creation_s = 0;
  std::uint64_t lifetime_s = 0;
  std::uint32_t count = 1;
  double interval_s = 0;
  std::uint8_t suite = 0;
  std::uint8_t coverage = kCoverPayload;
  std::string key_hex;      // suite 2 attach key
  bool age_block = false;   // in addition to the source node's default
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 1;
  double duration_s = 0;
  std::vector<NodeConfig> nodes;
  std::vector<Contact> contacts;
  std::vector<LinkFault> faults;
  std::vector<TrafficItem> traffic;
};

// Throws Error(parse_error) on malformed JSON and Error(validation_error)
// with a field path (e.g. "contacts[2].close_s") on invalid content.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& scenario);

// Every rule load_scenario enforces: ids unique and referenced ids known,
// contact windows ordered, rates in range, routes acyclic toward every
// traffic destination, traffic inside the scenario duration.
void validate_scenario(const Scenario& scenario);

nlohmann::json node_to_json(const NodeConfig& node);
NodeConfig node_from_json(const nlohmann::json& j, const std::string& path = "node");
NodeConfig load_node_config(const std::string& path);

}  // namespace dtn
