#pragma once

#include <cstdint>

namespace dtn {

// A node's view of UTC: fixed offset plus linear drift relative to true time.
// True time zero is the scenario start, so
//   local(t) = t + offset + drift * t.
// |drift| stays below 0.1; anything larger is a broken clock, not a drifting one.
struct ClockModel {
  std::int64_t offset_s = 0;
  double drift = 0.0;

  std::int64_t local_ms(std::int64_t true_ms) const;

  // Floor of local_ms / 1000; exact for negative clocks too.
  std::int64_t local_s(std::int64_t true_ms) const;

  // Residence time as this node's counters would measure it. Offsets cancel
  // in elapsed time; drift does not.
  std::int64_t measured_ms(std::int64_t true_elapsed_ms) const;
};

}  // namespace dtn
