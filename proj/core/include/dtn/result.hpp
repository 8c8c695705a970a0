#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace dtn {

enum class DecodeErrc : std::uint8_t {
  truncated,
  overflow,
  non_minimal,
  bad_version,
  trailing_garbage,
  missing_payload,
  duplicate_block,
  bad_endpoint,
  bad_block,
};

const char* to_string(DecodeErrc code);

// Where in the input the decoder gave up, plus a short reason.
struct DecodeError {
  DecodeErrc code{};
  std::size_t offset = 0;
  std::string detail;
};

// Decoders never throw on untrusted input; they hand back one of these.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(DecodeError error) : v_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  T& value() & { return std::get<T>(checked()); }
  const T& value() const& { return std::get<T>(checked()); }
  T&& value() && { return std::get<T>(std::move(checked())); }

  const DecodeError& error() const { return std::get<DecodeError>(v_); }

 private:
  std::variant<T, DecodeError>& checked() {
    if (!ok()) throw std::logic_error("Result::value() on error: " + error().detail);
    return v_;
  }
  const std::variant<T, DecodeError>& checked() const {
    if (!ok()) throw std::logic_error("Result::value() on error: " + error().detail);
    return v_;
  }

  std::variant<T, DecodeError> v_;
};

}  // namespace dtn
