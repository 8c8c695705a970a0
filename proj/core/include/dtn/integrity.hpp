#pragma once

#include <cstdint>
#include <optional>

#include "dtn/bundle.hpp"
#include "dtn/bytes.hpp"

namespace dtn {

enum class PolicyMode {
  none,           // never inspects anything; verdict is always skipped
  reliability,    // any suite acceptable, result must recompute
  authenticated,  // suite 2 required, keyed result must recompute
};

const char* to_string(PolicyMode mode);

struct VerificationPolicy {
  PolicyMode mode = PolicyMode::none;
  std::optional<Bytes> key;  // required by authenticated, used to check suite 2
};

enum class Verdict {
  pass,
  fail_mismatch,
  fail_absent,
  skipped,
};

const char* to_string(Verdict verdict);

// Concatenated coverage image in a fixed order: primary fields (bit0) first,
// payload (bit1) second. The integrity block itself is never covered, so a
// bundle can be verified without un-attaching it.
// Throws Error(empty_coverage) when no coverage bit is set.
Bytes coverage_bytes(const Bundle& bundle, std::uint8_t coverage);

// Computes the suite result over the coverage image. Suite 2 requires a key.
Bytes integrity_result(const Bundle& bundle, std::uint8_t suite,
                       std::uint8_t coverage, const std::optional<Bytes>& key);

// Throws Error(already_protected) when an integrity block exists,
// Error(key_required) for suite 2 without a key, Error(empty_coverage),
// and Error(validation_error) for an unknown suite.
Bundle attach_integrity(Bundle bundle, std::uint8_t suite, std::uint8_t coverage,
                        const std::optional<Bytes>& key = std::nullopt);

Verdict verify(const Bundle& bundle, const VerificationPolicy& policy);

}  // namespace dtn
