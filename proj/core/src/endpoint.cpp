#include "dtn/endpoint.hpp"

namespace dtn {

namespace {

constexpr std::string_view kScheme = "dtn:";
constexpr std::string_view kNullText = "dtn:none";

bool printable_ascii(std::string_view s) {
  for (char c : s)
    if (c < 0x21 || c > 0x7E) return false;
  return true;
}

}  // namespace

EndpointId::EndpointId() : text_(kNullText), slash_(0) {}

EndpointId::EndpointId(std::string text, std::size_t slash)
    : text_(std::move(text)), slash_(slash) {}

EndpointId EndpointId::none() { return EndpointId(); }

std::string_view EndpointId::node() const {
  if (is_null()) return {};
  return std::string_view(text_).substr(kScheme.size(), slash_ - kScheme.size());
}

std::string_view EndpointId::app() const {
  if (is_null()) return {};
  return std::string_view(text_).substr(slash_ + 1);
}

Result<EndpointId> EndpointId::parse(std::string_view text) {
  auto fail = [&](const char* why) {
    return DecodeError{DecodeErrc::bad_endpoint, 0,
                       std::string(why) + ": \"" + std::string(text) + "\""};
  };
  if (!printable_ascii(text)) return fail("endpoint id has non-printable bytes");
  if (text.substr(0, kScheme.size()) != kScheme) return fail("endpoint id lacks dtn: scheme");
  if (text == kNullText) return EndpointId();

  std::string_view rest = text.substr(kScheme.size());
  std::size_t sep = rest.find('/');
  if (sep == std::string_view::npos) return fail("endpoint id lacks node/app separator");
  if (sep == 0) return fail("endpoint id has empty node part");
  if (sep + 1 == rest.size()) return fail("endpoint id has empty application part");
  return EndpointId(std::string(text), kScheme.size() + sep);
}

}  // namespace dtn
