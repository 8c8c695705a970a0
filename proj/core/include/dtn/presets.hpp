#pragma once

#include <string>
#include <vector>

#include "dtn/scenario.hpp"

namespace dtn {

// Frozen demonstration scenarios:
//
//   baseline           3-node chain, clean links, everything delivered
//   silent_corruption  BER 1e-5 on the first hop, no checking: corrupt
//                      payloads arrive and count as delivered
//   reliability_fix    same traffic, faults and seed, suite-1 integrity +
//                      reliability policy: corruption is caught and dropped
//   clock_skew         source clock 7200 s slow, lifetime 3600 s, no age
//                      blocks: every bundle expires at the next hop
//   age_fix            same topology with age blocks: every bundle delivered
//   tamper_relay       relay rewrites lifetime 60 -> 6; payload-only coverage
//                      misses it and bundles expire downstream
//
// Throws Error(unknown_preset) for anything else.
Scenario preset(const std::string& name);

const std::vector<std::string>& preset_names();

}  // namespace dtn
