#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "dtn/simulator.hpp"

namespace dtn {

std::string report_text(const std::string& scenario_name, std::uint64_t seed,
                        const Metrics& metrics);

// Stable schema: {"scenario", "seed", "conserved", "total": {...},
// "nodes": {"<id>": {...}}} with counters in a fixed key order.
nlohmann::json report_json(const std::string& scenario_name, std::uint64_t seed,
                           const Metrics& metrics);

// One header row, then one row per node.
std::string report_csv(const Metrics& metrics);

}  // namespace dtn
