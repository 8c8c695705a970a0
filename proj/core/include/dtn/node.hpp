#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dtn/clock.hpp"
#include "dtn/expiry.hpp"
#include "dtn/integrity.hpp"

namespace dtn {

enum class Disposition {
  delivered,
  delivered_corrupt_undetected,  // assigned by the harness from ground truth
  queued,
  dropped_expired,
  dropped_invalid_timestamp,
  dropped_integrity,
  dropped_storage_full,
  dropped_decode_error,
};

const char* to_string(Disposition disposition);

// One in-transit edit a mutating relay applies to every bundle it forwards.
// The integrity result is deliberately not recomputed afterwards.
struct Mutation {
  enum class Kind {
    set_lifetime,     // rewrite the primary lifetime field
    edit_block_body,  // xor one byte of a named block's body
  };

  Kind kind = Kind::set_lifetime;
  std::uint64_t lifetime_s = 0;    // set_lifetime
  std::uint8_t block_type = 0;     // edit_block_body
  std::size_t body_offset = 0;     // for the integrity block, indexes the result
  std::uint8_t xor_mask = 0xFF;

  bool operator==(const Mutation&) const = default;
};

// Throws Error(target_absent) when the named block is missing or the offset
// falls outside its body.
Bundle mutate_in_transit(Bundle bundle, const Mutation& mutation);

struct NodeConfig {
  std::string node_id;
  ClockModel clock;
  VerificationPolicy policy;
  ExpiryPolicy expiry;
  std::map<std::string, std::string> routes;  // destination node -> next hop
  std::uint64_t storage_limit = 1;            // queued bundles, at least 1
  bool age_block_default = false;             // stamp age blocks on bundles created here
  std::optional<Mutation> tamper;             // forwarded bundles get mutated
  std::map<std::string, std::string> peers;   // live mode: node -> host:port
};

}  // namespace dtn
