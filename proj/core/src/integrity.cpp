#include "dtn/integrity.hpp"

#include <string>

#include "dtn/crc32.hpp"
#include "dtn/errors.hpp"
#include "dtn/hmac_sha256.hpp"
#include "dtn/wire.hpp"

namespace dtn {

const char* to_string(PolicyMode mode) {
  switch (mode) {
    case PolicyMode::none: return "none";
    case PolicyMode::reliability: return "reliability";
    case PolicyMode::authenticated: return "authenticated";
  }
  return "?";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail_mismatch: return "fail_mismatch";
    case Verdict::fail_absent: return "fail_absent";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

Bytes coverage_bytes(const Bundle& bundle, std::uint8_t coverage) {
  if ((coverage & (kCoverPrimary | kCoverPayload)) == 0)
    throw Error(Error::Kind::empty_coverage, "coverage selects no bytes");
  Bytes out;
  if (coverage & kCoverPrimary) {
    Bytes primary = encode_primary_fields(bundle);
    out.insert(out.end(), primary.begin(), primary.end());
  }
  if (coverage & kCoverPayload)
    out.insert(out.end(), bundle.payload.begin(), bundle.payload.end());
  return out;
}

Bytes integrity_result(const Bundle& bundle, std::uint8_t suite,
                       std::uint8_t coverage, const std::optional<Bytes>& key) {
  Bytes covered = coverage_bytes(bundle, coverage);
  switch (suite) {
    case kSuiteCrc32: {
      std::uint32_t c = crc32(covered);
      return Bytes{static_cast<std::uint8_t>(c >> 24),
                   static_cast<std::uint8_t>(c >> 16),
                   static_cast<std::uint8_t>(c >> 8),
                   static_cast<std::uint8_t>(c)};
    }
    case kSuiteHmacSha256: {
      if (!key)
        throw Error(Error::Kind::key_required, "suite 2 result needs a key");
      auto mac = hmac_sha256(as_span(*key), covered);
      return Bytes(mac.begin(), mac.end());
    }
    default:
      throw Error(Error::Kind::validation_error,
                  "unknown integrity suite " + std::to_string(suite));
  }
}

Bundle attach_integrity(Bundle bundle, std::uint8_t suite, std::uint8_t coverage,
                        const std::optional<Bytes>& key) {
  if (bundle.integrity)
    throw Error(Error::Kind::already_protected,
                "bundle already carries an integrity block");
  IntegrityBlock ib;
  ib.suite_id = suite;
  ib.coverage = coverage;
  ib.result = integrity_result(bundle, suite, coverage, key);
  bundle.integrity = std::move(ib);
  return bundle;
}

Verdict verify(const Bundle& bundle, const VerificationPolicy& policy) {
  if (policy.mode == PolicyMode::none) return Verdict::skipped;

  const std::optional<IntegrityBlock>& ib = bundle.integrity;
  if (policy.mode == PolicyMode::authenticated) {
    if (!ib || ib->suite_id != kSuiteHmacSha256) return Verdict::fail_absent;
    if (!policy.key) return Verdict::fail_mismatch;
    Bytes expect = integrity_result(bundle, kSuiteHmacSha256, ib->coverage, policy.key);
    return constant_time_equal(as_span(expect), as_span(ib->result))
               ? Verdict::pass
               : Verdict::fail_mismatch;
  }

  // reliability: whatever suite the sender chose must recompute
  if (!ib) return Verdict::fail_absent;
  if (ib->suite_id != kSuiteCrc32 && ib->suite_id != kSuiteHmacSha256)
    return Verdict::fail_mismatch;
  if (ib->suite_id == kSuiteHmacSha256 && !policy.key)
    return Verdict::fail_mismatch;
  Bytes expect = integrity_result(bundle, ib->suite_id, ib->coverage, policy.key);
  return constant_time_equal(as_span(expect), as_span(ib->result))
             ? Verdict::pass
             : Verdict::fail_mismatch;
}

}  // namespace dtn
