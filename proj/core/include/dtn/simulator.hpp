#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dtn/node.hpp"
#include "dtn/scenario.hpp"

namespace dtn {

struct TraceRecord {
  std::int64_t time_ms = 0;
  std::string node;
  std::string event;
  std::string bundle;  // source#creation_ts#creation_seq, empty for contacts
  std::string detail;
};

// Append-only log of everything the simulator did, serialized as one JSON
// object per line. Byte-identical across runs of the same scenario and seed.
struct EventTrace {
  std::vector<TraceRecord> records;

  std::string to_jsonl() const;
};

struct Counters {
  std::uint64_t created = 0;
  std::uint64_t delivered_clean = 0;
  std::uint64_t delivered_corrupt_undetected = 0;
  std::uint64_t dropped_expired = 0;
  std::uint64_t dropped_invalid_timestamp = 0;
  std::uint64_t dropped_integrity = 0;
  std::uint64_t dropped_decode_error = 0;
  std::uint64_t dropped_storage_full = 0;
  std::uint64_t queued_at_end = 0;  // still stored or in flight when time ran out

  std::uint64_t dropped_total() const;
  bool operator==(const Counters&) const = default;
};

struct Metrics {
  Counters total;
  std::map<std::string, Counters> per_node;

  // created = delivered + dropped + still queued. Checked after every run;
  // a violation is a simulator defect, not a scenario property.
  bool conserved() const;

  bool operator==(const Metrics&) const = default;
};

// Ground-truth fate of one created bundle, kept outside the protocol.
struct BundleOutcome {
  std::uint64_t tag = 0;
  std::string id;
  Disposition final_disposition = Disposition::queued;
  std::string final_node;
  bool corrupted = false;          // any fault touched the image
  bool corrupted_payload = false;  // a fault touched the payload body bytes
};

struct RunResult {
  EventTrace trace;
  Metrics metrics;
  std::vector<BundleOutcome> outcomes;
};

// Single-threaded discrete-event run over integer milliseconds of true time.
// Deterministic: every random stream derives from scenario.seed.
RunResult run(const Scenario& scenario);

}  // namespace dtn
