#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dtn/clock.hpp"
#include "dtn/endpoint.hpp"
#include "dtn/errors.hpp"
#include "dtn/expiry.hpp"
#include "dtn/fault.hpp"

using namespace dtn;

namespace {

Bundle utc_bundle(std::uint64_t ts, std::uint64_t lifetime) {
  Bundle b;
  b.source = EndpointId::parse("dtn:a/app").value();
  b.destination = EndpointId::parse("dtn:b/app").value();
  b.creation_ts = ts;
  b.lifetime_s = lifetime;
  b.payload = {1};
  return b;
}

}  // namespace

TEST_CASE("endpoint parsing") {
  auto e = EndpointId::parse("dtn:relay-1/telemetry").value();
  CHECK(e.text() == "dtn:relay-1/telemetry");
  CHECK(e.node() == "relay-1");
  CHECK(e.app() == "telemetry");
  CHECK(!e.is_null());

  CHECK(EndpointId::parse("dtn:none").value().is_null());
  CHECK(EndpointId::none().text() == "dtn:none");
  CHECK(EndpointId() == EndpointId::none());

  for (const char* bad : {"", "dtn:", "dtn:/app", "dtn:node/", "dtn:node",
                          "http://x/y", "dtn:a b/app", "dtn:a\x01/app"}) {
    CAPTURE(bad);
    auto r = EndpointId::parse(bad);
    REQUIRE(!r.ok());
    CHECK(r.error().code == DecodeErrc::bad_endpoint);
  }
}

TEST_CASE("utc expiry is strict with a live boundary") {
  Bundle b = utc_bundle(1000, 60);
  ExpiryPolicy p;
  CHECK(is_expired(b, 1000, p) == Liveness::live);
  CHECK(is_expired(b, 1060, p) == Liveness::live);  // exactly at the deadline
  CHECK(is_expired(b, 1061, p) == Liveness::expired);
  p.future_tolerance_s = 1;
  CHECK(is_expired(b, 999, p) == Liveness::live);
}

TEST_CASE("future timestamps past the tolerance are invalid") {
  Bundle b = utc_bundle(5000, 60);
  ExpiryPolicy p;
  CHECK(is_expired(b, 4999, p) == Liveness::invalid_future_timestamp);
  p.future_tolerance_s = 10;
  CHECK(is_expired(b, 4990, p) == Liveness::live);
  CHECK(is_expired(b, 4989, p) == Liveness::invalid_future_timestamp);
}

TEST_CASE("a skewed-negative local clock sees every timestamp as futuristic") {
  Bundle b = utc_bundle(100, 3600);
  CHECK(is_expired(b, -7100, ExpiryPolicy{}) == Liveness::invalid_future_timestamp);
}

TEST_CASE("age discipline replaces the utc rule entirely") {
  Bundle b = utc_bundle(1000, 60);
  b.age_ms = 0;
  ExpiryPolicy p;
  // wildly expired and wildly future by utc, both live by age
  CHECK(is_expired(b, 1000000, p) == Liveness::live);
  CHECK(is_expired(b, -1000000, p) == Liveness::live);

  b.age_ms = 60000;
  CHECK(is_expired(b, 1000, p) == Liveness::live);  // boundary, strict
  b.age_ms = 60001;
  CHECK(is_expired(b, 1000, p) == Liveness::expired);
}

TEST_CASE("accumulate_age is additive and saturating") {
  Bundle b = utc_bundle(1000, 60);
  CHECK_THROWS_AS(accumulate_age(b, 5), Error);

  b.age_ms = 0;
  Bundle once = accumulate_age(b, 12345);
  CHECK(once.age_ms == 12345);

  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t r1 = rng.bounded(1u << 30), r2 = rng.bounded(1u << 30);
    Bundle split = accumulate_age(accumulate_age(b, r1), r2);
    Bundle whole = accumulate_age(b, r1 + r2);
    CHECK(split.age_ms == whole.age_ms);
  }

  b.age_ms = ~0ull - 5;
  CHECK(accumulate_age(b, 100).age_ms == ~0ull);
}

TEST_CASE("remaining lifetime under both disciplines") {
  Bundle b = utc_bundle(1000, 60);
  CHECK(remaining_lifetime_ms(b, 1000) == 60000);
  CHECK(remaining_lifetime_ms(b, 1059) == 1000);
  CHECK(remaining_lifetime_ms(b, 1060) == 0);  // live with nothing left
  CHECK_THROWS_AS(remaining_lifetime_ms(b, 1061), Error);

  b.age_ms = 59999;
  CHECK(remaining_lifetime_ms(b, 1061) == 1);  // utc says dead, age governs
  b.age_ms = 60000;
  CHECK(remaining_lifetime_ms(b, 0) == 0);
  b.age_ms = 60001;
  CHECK_THROWS_AS(remaining_lifetime_ms(b, 0), Error);
}

TEST_CASE("creation clock sequences within a second and resets on advance") {
  CreationClock c;
  CHECK(c.take(100) == 0);
  CHECK(c.take(100) == 1);
  CHECK(c.take(100) == 2);
  CHECK(c.take(101) == 0);
  CHECK(c.take(101) == 1);
  CHECK(c.take(200) == 0);
}

TEST_CASE("new_bundle stamps fields and validates input") {
  CreationClock c;
  auto src = EndpointId::parse("dtn:a/app").value();
  auto dst = EndpointId::parse("dtn:b/app").value();

  Bundle b = new_bundle(src, dst, 60, {1, 2}, 5000, false, c);
  CHECK(b.creation_ts == 5000);
  CHECK(b.creation_seq == 0);
  CHECK(b.lifetime_s == 60);
  CHECK(!b.age_ms.has_value());
  CHECK(id_of(b).str() == "dtn:a/app#5000#0");

  Bundle aged = new_bundle(src, dst, 60, {}, 5000, true, c);
  CHECK(aged.creation_seq == 1);
  CHECK(aged.age_ms == 0);

  CHECK_THROWS_AS(new_bundle(src, dst, 0, {}, 5000, false, c), Error);
  CHECK_THROWS_AS(new_bundle(src, dst, 60, {}, -1, false, c), Error);
}

TEST_CASE("clock model maps true time to local readings") {
  ClockModel truthful;
  CHECK(truthful.local_ms(123456) == 123456);
  CHECK(truthful.local_s(123456) == 123);
  CHECK(truthful.measured_ms(500) == 500);

  ClockModel slow{-7200, 0.0};
  CHECK(slow.local_ms(1000) == 1000 - 7200000);
  CHECK(slow.local_s(1000) == -7199);
  CHECK(slow.local_s(999) == -7200);  // floor, not truncation
  CHECK(slow.measured_ms(500) == 500);

  ClockModel fast{0, 1e-3};
  CHECK(fast.local_ms(1000000) == 1001000);
  CHECK(fast.measured_ms(1000000) == 1001000);

  ClockModel lagging{0, -1e-3};
  CHECK(lagging.measured_ms(1000000) == 999000);
  CHECK(lagging.measured_ms(0) == 0);
}

TEST_CASE("hex helpers round-trip") {
  Bytes b = from_hex("00ff10AB");
  CHECK(b == Bytes{0x00, 0xFF, 0x10, 0xAB});
  CHECK(to_hex(as_span(b)) == "00ff10ab");
  CHECK(from_hex("").empty());
  CHECK_THROWS_AS(from_hex("abc"), Error);   // odd length
  CHECK_THROWS_AS(from_hex("zz"), Error);    // not hex
}
