#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dtn/crc32.hpp"
#include "dtn/errors.hpp"
#include "dtn/fault.hpp"
#include "dtn/hmac_sha256.hpp"
#include "dtn/integrity.hpp"
#include "oracles.hpp"
#include "vectors.hpp"

using namespace dtn;

namespace {

// The bundle the integrity.txt images were computed over.
Bundle reference() {
  Bundle b;
  b.source = EndpointId::parse("dtn:a/app").value();
  b.destination = EndpointId::parse("dtn:b/app").value();
  b.creation_ts = 1000;
  b.creation_seq = 0;
  b.lifetime_s = 60;
  b.payload = {'a', 'b', 'c'};
  return b;
}

const Bytes kKey = from_hex("000102030405060708090a0b0c0d0e0f");

}  // namespace

TEST_CASE("crc32 matches the frozen vectors and the bitwise oracle") {
  CHECK(crc32(ByteSpan{}) == 0x00000000u);
  CHECK(crc32(as_span("123456789")) == 0xCBF43926u);

  for (const auto& row : vectors::crc32()) {
    CAPTURE(to_hex(as_span(row.input)));
    CHECK(crc32(row.input) == row.crc);
    CHECK(oracle::crc32_bitwise(row.input) == row.crc);
  }
}

TEST_CASE("crc32 agrees with the oracle on random inputs") {
  Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    Bytes data(rng.bounded(257));
    for (auto& byte : data) byte = static_cast<std::uint8_t>(rng.next());
    CHECK(crc32(data) == oracle::crc32_bitwise(data));
  }
}

TEST_CASE("crc32_update streams to the same result") {
  Bytes data(1024);
  Rng rng(42);
  for (auto& byte : data) byte = static_cast<std::uint8_t>(rng.next());

  ByteSpan span = as_span(data);
  std::uint32_t state = kCrc32Init;
  std::size_t at = 0;
  while (at < span.size()) {
    std::size_t chunk = std::min<std::size_t>(1 + rng.bounded(100), span.size() - at);
    state = crc32_update(state, span.subspan(at, chunk));
    at += chunk;
  }
  CHECK(crc32_final(state) == crc32(span));
}

TEST_CASE("crc32 detects sampled single-bit flips") {
  Bytes data(1024);
  Rng rng(43);
  for (auto& byte : data) byte = static_cast<std::uint8_t>(rng.next());
  const std::uint32_t clean = crc32(data);

  for (int i = 0; i < 400; ++i) {
    std::uint64_t bit = rng.bounded(data.size() * 8);
    data[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    CHECK(crc32(data) != clean);
    data[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
  }
  CHECK(crc32(data) == clean);
}

TEST_CASE("hmac-sha256 matches the frozen vectors") {
  for (const auto& row : vectors::hmac_sha256()) {
    auto mac = hmac_sha256(as_span(row.key), as_span(row.data));
    CHECK(Bytes(mac.begin(), mac.end()) == row.mac);
  }
}

TEST_CASE("constant_time_equal") {
  Bytes a = {1, 2, 3}, b = {1, 2, 3}, c = {1, 2, 4};
  CHECK(constant_time_equal(as_span(a), as_span(b)));
  CHECK(!constant_time_equal(as_span(a), as_span(c)));
  CHECK(!constant_time_equal(as_span(a), ByteSpan(a.data(), 2)));
  CHECK(constant_time_equal(ByteSpan{}, ByteSpan{}));
}

TEST_CASE("coverage images and suite results match the frozen vectors") {
  Bundle b = reference();
  for (const auto& row : vectors::integrity()) {
    CAPTURE(row.suite_name);
    CAPTURE(int(row.coverage));
    CHECK(coverage_bytes(b, row.coverage) == row.covered);

    std::uint8_t suite = row.suite_name == "crc32" ? kSuiteCrc32 : kSuiteHmacSha256;
    std::optional<Bytes> key;
    if (!row.key.empty()) key = row.key;
    CHECK(integrity_result(b, suite, row.coverage, key) == row.result);
  }
}

TEST_CASE("coverage must select something") {
  Bundle b = reference();
  CHECK_THROWS_AS(coverage_bytes(b, 0), Error);
  CHECK_THROWS_AS(coverage_bytes(b, 0x04), Error);  // only bits 0 and 1 count
  CHECK(coverage_bytes(b, 0x07) == coverage_bytes(b, 0x03));
}

TEST_CASE("attach_integrity contracts") {
  Bundle b = reference();
  Bundle sealed = attach_integrity(b, kSuiteCrc32, kCoverPayload);
  REQUIRE(sealed.integrity.has_value());
  CHECK(sealed.integrity->suite_id == kSuiteCrc32);
  CHECK(sealed.integrity->coverage == kCoverPayload);
  CHECK(sealed.integrity->result.size() == 4);

  CHECK_THROWS_AS(attach_integrity(sealed, kSuiteCrc32, kCoverPayload), Error);
  CHECK_THROWS_AS(attach_integrity(b, kSuiteHmacSha256, kCoverPayload), Error);
  CHECK_THROWS_AS(attach_integrity(b, kSuiteCrc32, 0), Error);
  CHECK_THROWS_AS(attach_integrity(b, 9, kCoverPayload), Error);

  Bundle keyed = attach_integrity(b, kSuiteHmacSha256, kCoverPrimary | kCoverPayload, kKey);
  CHECK(keyed.integrity->result.size() == 32);
}

TEST_CASE("verify under each policy mode") {
  Bundle bare = reference();
  Bundle crc = attach_integrity(bare, kSuiteCrc32, kCoverPayload);
  Bundle mac = attach_integrity(bare, kSuiteHmacSha256, kCoverPayload, kKey);

  VerificationPolicy none;
  VerificationPolicy rel{PolicyMode::reliability, std::nullopt};
  VerificationPolicy rel_keyed{PolicyMode::reliability, kKey};
  VerificationPolicy auth{PolicyMode::authenticated, kKey};

  SUBCASE("none never inspects") {
    Bundle broken = crc;
    broken.payload[0] ^= 0xFF;
    CHECK(verify(bare, none) == Verdict::skipped);
    CHECK(verify(broken, none) == Verdict::skipped);
  }

  SUBCASE("reliability accepts either suite and demands presence") {
    CHECK(verify(bare, rel) == Verdict::fail_absent);
    CHECK(verify(crc, rel) == Verdict::pass);
    CHECK(verify(mac, rel_keyed) == Verdict::pass);
    CHECK(verify(mac, rel) == Verdict::fail_mismatch);  // keyless node, keyed suite

    Bundle unknown = crc;
    unknown.integrity->suite_id = 7;
    CHECK(verify(unknown, rel) == Verdict::fail_mismatch);
  }

  SUBCASE("reliability catches covered corruption and misses the rest") {
    Bundle broken = crc;
    broken.payload[1] ^= 0x01;
    CHECK(verify(broken, rel) == Verdict::fail_mismatch);

    Bundle stale = crc;
    stale.integrity->result[3] ^= 0x80;
    CHECK(verify(stale, rel) == Verdict::fail_mismatch);

    Bundle rewritten = crc;  // payload-only coverage leaves primary fields open
    rewritten.lifetime_s = 6;
    CHECK(verify(rewritten, rel) == Verdict::pass);

    Bundle covered = attach_integrity(bare, kSuiteCrc32, kCoverPrimary | kCoverPayload);
    covered.lifetime_s = 6;
    CHECK(verify(covered, rel) == Verdict::fail_mismatch);
  }

  SUBCASE("authenticated requires the keyed suite") {
    CHECK(verify(bare, auth) == Verdict::fail_absent);
    CHECK(verify(crc, auth) == Verdict::fail_absent);  // wrong suite = no usable block
    CHECK(verify(mac, auth) == Verdict::pass);

    Bundle tampered = mac;
    tampered.payload[0] ^= 0x01;
    CHECK(verify(tampered, auth) == Verdict::fail_mismatch);

    VerificationPolicy wrong_key{PolicyMode::authenticated, Bytes{9, 9, 9}};
    CHECK(verify(mac, wrong_key) == Verdict::fail_mismatch);

    VerificationPolicy keyless{PolicyMode::authenticated, std::nullopt};
    CHECK(verify(mac, keyless) == Verdict::fail_mismatch);
  }
}

TEST_CASE("verification survives coverage changes only when recomputed") {
  // A forged coverage byte changes the image, so the stored result no longer
  // recomputes; the attacker cannot narrow coverage to hide a payload edit.
  Bundle covered = attach_integrity(reference(), kSuiteCrc32,
                                    kCoverPrimary | kCoverPayload);
  covered.integrity->coverage = kCoverPrimary;
  VerificationPolicy rel{PolicyMode::reliability, std::nullopt};
  CHECK(verify(covered, rel) == Verdict::fail_mismatch);
}
