#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <sstream>
#include <string>

#include "dtn/errors.hpp"
#include "dtn/presets.hpp"
#include "dtn/report.hpp"
#include "dtn/simulator.hpp"

using namespace dtn;
using nlohmann::json;

namespace {

// True when fn throws an Error whose message mentions the field path.
bool rejects(const std::function<void()>& fn, const std::string& needle) {
  try {
    fn();
  } catch (const Error& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

Scenario two_node(double duration_s = 10) {
  Scenario s;
  s.name = "two_node";
  s.seed = 7;
  s.duration_s = duration_s;
  NodeConfig a;
  a.node_id = "a";
  a.routes = {{"b", "b"}};
  a.storage_limit = 8;
  NodeConfig b;
  b.node_id = "b";
  s.nodes = {a, b};
  s.contacts = {{"a", "b", 0, duration_s, 0}};
  TrafficItem t;
  t.source = "dtn:a/app";
  t.destination = "dtn:b/app";
  t.payload_bytes = 10240;
  t.creation_s = 1;
  t.lifetime_s = 60;
  s.traffic = {t};
  return s;
}

}  // namespace

TEST_CASE("scenario json round-trips through parse and serialize") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    json first = scenario_to_json(preset(name));
    json second = scenario_to_json(scenario_from_json(first));
    CHECK(first == second);
  }
}

TEST_CASE("node config json round-trips") {
  NodeConfig n;
  n.node_id = "relay";
  n.clock = {-3, 0.002};
  n.policy.mode = PolicyMode::authenticated;
  n.policy.key = Bytes{1, 2, 3, 4};
  n.expiry.future_tolerance_s = 30;
  n.routes = {{"d", "c"}, {"e", "c"}};
  n.storage_limit = 17;
  n.age_block_default = true;
  n.tamper = Mutation{Mutation::Kind::set_lifetime, 6};
  n.peers = {{"c", "127.0.0.1:4557"}};

  json j = node_to_json(n);
  CHECK(node_to_json(node_from_json(j)) == j);

  NodeConfig back = node_from_json(j);
  CHECK(back.node_id == "relay");
  CHECK(back.clock.offset_s == -3);
  CHECK(back.policy.mode == PolicyMode::authenticated);
  CHECK(back.policy.key == Bytes{1, 2, 3, 4});
  CHECK(back.routes == n.routes);
  CHECK(back.tamper == n.tamper);
  CHECK(back.peers == n.peers);
}

TEST_CASE("malformed scenario json is rejected with a field path") {
  json ok = scenario_to_json(two_node());

  json missing = ok;
  missing.erase("duration_s");
  CHECK(rejects([&] { scenario_from_json(missing); }, "scenario.duration_s"));

  json unknown = ok;
  unknown["bogus"] = 1;
  CHECK(rejects([&] { scenario_from_json(unknown); }, "scenario.bogus"));

  json bad_mode = ok;
  bad_mode["nodes"][0]["policy"]["mode"] = "paranoid";
  CHECK(rejects([&] { scenario_from_json(bad_mode); }, "nodes[0].policy.mode"));

  json bad_suite = ok;
  bad_suite["traffic"][0]["suite"] = 9;
  CHECK(rejects([&] { scenario_from_json(bad_suite); }, "traffic[0].suite"));
}

TEST_CASE("invalid scenario content is rejected with a field path") {
  CHECK(rejects([] { preset("nope"); }, "nope"));

  Scenario inverted = two_node();
  inverted.contacts[0].close_s = -1;
  CHECK(rejects([&] { validate_scenario(inverted); }, "contacts[0].close_s"));

  Scenario dup = two_node();
  dup.nodes.push_back(dup.nodes[0]);
  CHECK(rejects([&] { validate_scenario(dup); }, "duplicate node id"));

  Scenario self_route = two_node();
  self_route.nodes[0].routes["b"] = "a";
  CHECK(rejects([&] { validate_scenario(self_route); }, "routes"));

  Scenario stranger = two_node();
  stranger.traffic[0].destination = "dtn:z/app";
  CHECK(rejects([&] { validate_scenario(stranger); }, "traffic[0].destination"));

  Scenario late = two_node();
  late.traffic[0].creation_s = 11;
  CHECK(rejects([&] { validate_scenario(late); }, "outside the scenario duration"));

  Scenario skewed = two_node();
  skewed.nodes[0].clock.offset_s = -7200;
  CHECK(rejects([&] { validate_scenario(skewed); }, "traffic[0].creation_s"));

  Scenario cycle = two_node();
  NodeConfig c;
  c.node_id = "c";
  c.routes = {{"b", "a"}};
  cycle.nodes.push_back(c);
  cycle.nodes[0].routes["b"] = "c";
  CHECK(rejects([&] { validate_scenario(cycle); }, "cycle"));

  Scenario keyless = two_node();
  keyless.traffic[0].suite = kSuiteHmacSha256;
  CHECK(rejects([&] { validate_scenario(keyless); }, "traffic[0].key_hex"));
}

TEST_CASE("every preset validates and runs conserved") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    Scenario s = preset(name);
    RunResult r = run(s);
    CHECK(r.metrics.conserved());
    CHECK(r.metrics.total.created == s.traffic[0].count);
    CHECK(r.outcomes.size() == s.traffic[0].count);
  }
}

TEST_CASE("baseline delivers everything clean") {
  RunResult r = run(preset("baseline"));
  CHECK(r.metrics.total.created == 50);
  CHECK(r.metrics.per_node.at("c").delivered_clean == 50);
  CHECK(r.metrics.total.dropped_total() == 0);
  CHECK(r.metrics.total.queued_at_end == 0);
  for (const BundleOutcome& o : r.outcomes) {
    CHECK(o.final_disposition == Disposition::delivered);
    CHECK(!o.corrupted);
  }
}

TEST_CASE("a slow source clock kills every bundle at the first honest relay") {
  RunResult r = run(preset("clock_skew"));
  CHECK(r.metrics.per_node.at("b").dropped_expired == 100);
  CHECK(r.metrics.total.delivered_clean == 0);

  RunResult fixed = run(preset("age_fix"));
  CHECK(fixed.metrics.per_node.at("c").delivered_clean == 100);
  CHECK(fixed.metrics.total.dropped_total() == 0);
}

TEST_CASE("a tampered lifetime expires bundles downstream of the rewrite") {
  RunResult r = run(preset("tamper_relay"));
  CHECK(r.metrics.per_node.at("c").dropped_expired == 100);
  CHECK(r.metrics.total.dropped_integrity == 0);  // payload-only coverage
  CHECK(r.metrics.total.delivered_clean == 0);
}

TEST_CASE("identical seeds give byte-identical traces") {
  for (const std::string& name : {std::string("baseline"), std::string("tamper_relay")}) {
    CAPTURE(name);
    RunResult first = run(preset(name));
    RunResult second = run(preset(name));
    CHECK(first.trace.to_jsonl() == second.trace.to_jsonl());
    CHECK(first.metrics == second.metrics);
  }
}

TEST_CASE("storage decay corrupts queued bundles and stays conserved") {
  Scenario s = two_node();
  LinkFault f;
  f.from = "a";
  f.to = "b";
  f.model.storage_corrupt_prob = 1.0;
  f.model.storage_flip_bits = 3;
  s.faults = {f};
  validate_scenario(s);

  RunResult r = run(s);
  CHECK(r.metrics.conserved());
  CHECK(r.metrics.total.created == 1);
  CHECK(r.metrics.total.delivered_clean == 0);  // three flips never miss 10 KiB
  REQUIRE(r.outcomes.size() == 1);
  CHECK(r.outcomes[0].corrupted);

  bool traced = false;
  for (const TraceRecord& rec : r.trace.records)
    if (rec.event == "storage_corrupt" && rec.node == "a") traced = true;
  CHECK(traced);
}

TEST_CASE("bundles still in flight at the end count as queued") {
  Scenario s = two_node(3);
  s.contacts[0].close_s = 2;
  s.contacts[0].delay_s = 5;  // arrival at 6 s, after the end of time
  validate_scenario(s);

  RunResult r = run(s);
  CHECK(r.metrics.total.queued_at_end == 1);
  CHECK(r.metrics.per_node.at("b").queued_at_end == 1);
  REQUIRE(r.outcomes.size() == 1);
  CHECK(r.outcomes[0].final_disposition == Disposition::queued);
  CHECK(r.outcomes[0].final_node == "b");
}

TEST_CASE("traces serialize one flat json object per line") {
  RunResult r = run(preset("baseline"));
  std::istringstream lines(r.trace.to_jsonl());
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    json j = json::parse(line);
    CHECK(j.size() == 5);
    CHECK(j.contains("time_ms"));
    CHECK(j.contains("node"));
    CHECK(j.contains("event"));
    CHECK(j.contains("bundle"));
    CHECK(j.contains("detail"));
    ++n;
  }
  CHECK(n == r.trace.records.size());

  REQUIRE(!r.trace.records.empty());
  const TraceRecord& first = r.trace.records[0];
  CHECK(first.time_ms == 0);
  CHECK(first.event == "contact_open");
  CHECK(first.node == "a");
  CHECK(first.detail == "b");
}

TEST_CASE("reports expose the counters in every format") {
  RunResult r = run(preset("baseline"));

  json j = report_json("baseline", 1, r.metrics);
  CHECK(j["scenario"] == "baseline");
  CHECK(j["seed"] == 1);
  CHECK(j["conserved"] == true);
  CHECK(j["total"]["created"] == 50);
  CHECK(j["total"]["delivered_clean"] == 50);
  CHECK(j["nodes"]["c"]["delivered_clean"] == 50);
  CHECK(j["nodes"].size() == 3);

  std::string text = report_text("baseline", 1, r.metrics);
  CHECK(text.find("scenario baseline (seed 1)") != std::string::npos);
  CHECK(text.find("created: 50") != std::string::npos);
  CHECK(text.find("conserved: yes") != std::string::npos);

  std::string csv = report_csv(r.metrics);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line ==
        "node,created,delivered_clean,delivered_corrupt_undetected,"
        "dropped_expired,dropped_invalid_timestamp,dropped_integrity,"
        "dropped_decode_error,dropped_storage_full,queued_at_end");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);
}
