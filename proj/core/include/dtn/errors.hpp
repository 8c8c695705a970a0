#pragma once

#include <stdexcept>
#include <string>

namespace dtn {

// Domain and I/O failures carry a machine-checkable kind next to the message.
// Codec failures on untrusted input use DecodeError instead (see result.hpp);
// throwing is reserved for contract violations and environment faults.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    invalid_lifetime,
    no_age_block,
    already_expired,
    empty_coverage,
    key_required,
    already_protected,
    target_absent,
    unknown_preset,
    parse_error,
    validation_error,
    link_down,
    bad_frame,
    frame_too_large,
    io_error,
  };

  Error(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace dtn
