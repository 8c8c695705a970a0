#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dtn/cla.hpp"
#include "dtn/errors.hpp"
#include "dtn/expiry.hpp"
#include "dtn/integrity.hpp"
#include "dtn/tcp.hpp"
#include "dtn/wire.hpp"

namespace {

constexpr std::int64_t kEpochOffsetMs = 946684800000;

std::int64_t true_now_s() {
  auto now = std::chrono::system_clock::now().time_since_epoch();
  return (std::chrono::duration_cast<std::chrono::milliseconds>(now).count() -
          kEpochOffsetMs) /
         1000;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Create one bundle and send it to a node"};
  std::string to = "127.0.0.1:" + std::to_string(dtn::kDefaultPort);
  std::string source, destination;
  std::uint64_t lifetime_s = 3600;
  std::string payload_text;
  std::string payload_file;
  std::uint32_t suite = 0;
  std::uint32_t coverage = dtn::kCoverPayload;
  std::string key_hex;
  bool with_age = false;

  app.add_option("--to", to, "Node address host:port")->capture_default_str();
  app.add_option("--source", source, "Source EID, e.g. dtn:a/app")->required();
  app.add_option("--dest", destination, "Destination EID")->required();
  app.add_option("--lifetime", lifetime_s, "Lifetime in seconds")->capture_default_str();
  app.add_option("--payload", payload_text, "Payload string");
  app.add_option("--payload-file", payload_file, "Read the payload from this file")
      ->excludes("--payload");
  app.add_option("--suite", suite, "Integrity suite: 0 none, 1 crc32, 2 hmac-sha256")
      ->check(CLI::Range(0, 2))
      ->capture_default_str();
  app.add_option("--coverage", coverage, "Coverage bits: 1 primary, 2 payload, 3 both")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  app.add_option("--key-hex", key_hex, "Suite 2 key (hex)");
  app.add_flag("--age", with_age, "Attach a bundle-age block");
  CLI11_PARSE(app, argc, argv);

  try {
    dtn::Bytes payload(payload_text.begin(), payload_text.end());
    if (!payload_file.empty()) {
      std::ifstream in(payload_file, std::ios::binary);
      if (!in) throw dtn::Error(dtn::Error::Kind::io_error, "cannot open " + payload_file);
      payload.assign(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
    }

    auto src = dtn::EndpointId::parse(source);
    if (!src.ok())
      throw dtn::Error(dtn::Error::Kind::validation_error, "bad --source: " + source);
    auto dst = dtn::EndpointId::parse(destination);
    if (!dst.ok())
      throw dtn::Error(dtn::Error::Kind::validation_error, "bad --dest: " + destination);

    dtn::CreationClock sequencer;
    dtn::Bundle bundle =
        dtn::new_bundle(src.value(), dst.value(), lifetime_s, std::move(payload),
                        true_now_s(), with_age, sequencer);
    if (suite != 0) {
      std::optional<dtn::Bytes> key;
      if (!key_hex.empty()) key = dtn::from_hex(key_hex);
      bundle = dtn::attach_integrity(std::move(bundle),
                                     static_cast<std::uint8_t>(suite),
                                     static_cast<std::uint8_t>(coverage), key);
    }
    dtn::Bytes image = dtn::encode_bundle(bundle);

    auto [host, port] = dtn::split_host_port(to);
    auto link = dtn::TcpLink::connect(host, port);
    dtn::cla_send(*link, dtn::as_span(image));
    std::cout << "sent " << dtn::id_of(bundle).str() << " (" << image.size()
              << " bytes on the wire) to " << to << "\n";
    return 0;
  } catch (const dtn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
