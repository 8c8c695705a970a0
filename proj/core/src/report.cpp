#include "dtn/report.hpp"

#include <array>
#include <sstream>

namespace dtn {

namespace {

constexpr std::array<const char*, 9> kFields = {
    "created",
    "delivered_clean",
    "delivered_corrupt_undetected",
    "dropped_expired",
    "dropped_invalid_timestamp",
    "dropped_integrity",
    "dropped_decode_error",
    "dropped_storage_full",
    "queued_at_end",
};

std::array<std::uint64_t, 9> values(const Counters& c) {
  return {c.created,
          c.delivered_clean,
          c.delivered_corrupt_undetected,
          c.dropped_expired,
          c.dropped_invalid_timestamp,
          c.dropped_integrity,
          c.dropped_decode_error,
          c.dropped_storage_full,
          c.queued_at_end};
}

}  // namespace

std::string report_text(const std::string& scenario_name, std::uint64_t seed,
                        const Metrics& metrics) {
  std::ostringstream out;
  out << "scenario " << scenario_name << " (seed " << seed << ")\n";
  auto totals = values(metrics.total);
  for (std::size_t i = 0; i < kFields.size(); ++i) {
    out << "  " << kFields[i] << ": " << totals[i];
    if (totals[i] > 0 && i != 0) {
      out << "  [";
      bool first = true;
      for (const auto& [id, c] : metrics.per_node) {
        std::uint64_t v = values(c)[i];
        if (v == 0) continue;
        if (!first) out << " ";
        out << id << "=" << v;
        first = false;
      }
      out << "]";
    }
    out << "\n";
  }
  out << "  conserved: " << (metrics.conserved() ? "yes" : "NO") << "\n";
  return out.str();
}

nlohmann::json report_json(const std::string& scenario_name, std::uint64_t seed,
                           const Metrics& metrics) {
  auto counters = [](const Counters& c) {
    nlohmann::json j;
    auto vals = values(c);
    for (std::size_t i = 0; i < kFields.size(); ++i) j[kFields[i]] = vals[i];
    return j;
  };
  nlohmann::json j;
  j["scenario"] = scenario_name;
  j["seed"] = seed;
  j["conserved"] = metrics.conserved();
  j["total"] = counters(metrics.total);
  j["nodes"] = nlohmann::json::object();
  for (const auto& [id, c] : metrics.per_node) j["nodes"][id] = counters(c);
  return j;
}

std::string report_csv(const Metrics& metrics) {
  std::ostringstream out;
  out << "node";
  for (const char* field : kFields) out << "," << field;
  out << "\n";
  for (const auto& [id, c] : metrics.per_node) {
    out << id;
    for (std::uint64_t v : values(c)) out << "," << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace dtn
