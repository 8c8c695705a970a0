#pragma once

#include <string>
#include <string_view>

#include "dtn/result.hpp"

namespace dtn {

// Endpoint identifier of the form "dtn:<node>/<app>", or the null endpoint
// "dtn:none". Node and application parts are non-empty printable ASCII;
// the first '/' splits them.
class EndpointId {
 public:
  EndpointId();  // null endpoint

  static Result<EndpointId> parse(std::string_view text);
  static EndpointId none();

  const std::string& text() const { return text_; }
  std::string_view node() const;
  std::string_view app() const;
  bool is_null() const { return slash_ == 0; }

  bool operator==(const EndpointId& other) const { return text_ == other.text_; }

 private:
  EndpointId(std::string text, std::size_t slash);

  std::string text_;
  std::size_t slash_;  // index of the separating '/', 0 for the null endpoint
};

}  // namespace dtn
