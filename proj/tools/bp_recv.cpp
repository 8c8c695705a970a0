#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dtn/cla.hpp"
#include "dtn/errors.hpp"
#include "dtn/integrity.hpp"
#include "dtn/tcp.hpp"
#include "dtn/wire.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Register as a consumer and receive bundles"};
  std::string from = "127.0.0.1:" + std::to_string(dtn::kDefaultPort);
  std::string eid;
  std::string out_path;
  std::uint32_t count = 1;
  std::string verify_mode = "none";
  std::string key_hex;

  app.add_option("--from", from, "Node address host:port")->capture_default_str();
  app.add_option("--eid", eid, "Endpoint to register, e.g. dtn:b/sink")->required();
  app.add_option("--out", out_path, "Write received payloads here (appending)");
  app.add_option("--count", count, "Exit after this many bundles")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--verify", verify_mode, "none, reliability, or authenticated")
      ->check(CLI::IsMember({"none", "reliability", "authenticated"}))
      ->capture_default_str();
  app.add_option("--key-hex", key_hex, "Verification key (hex)");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!dtn::EndpointId::parse(eid).ok())
      throw dtn::Error(dtn::Error::Kind::validation_error, "bad --eid: " + eid);

    dtn::VerificationPolicy policy;
    if (verify_mode == "reliability") policy.mode = dtn::PolicyMode::reliability;
    if (verify_mode == "authenticated") policy.mode = dtn::PolicyMode::authenticated;
    if (!key_hex.empty()) policy.key = dtn::from_hex(key_hex);

    auto [host, port] = dtn::split_host_port(from);
    auto link = dtn::TcpLink::connect(host, port);
    std::string hello = "R " + eid + "\n";
    link->write_all(reinterpret_cast<const std::uint8_t*>(hello.data()), hello.size());

    std::ofstream out;
    if (!out_path.empty()) {
      out.open(out_path, std::ios::binary);
      if (!out)
        throw dtn::Error(dtn::Error::Kind::io_error, "cannot write " + out_path);
    }

    for (std::uint32_t received = 0; received < count;) {
      dtn::Bytes image = dtn::cla_recv(*link);
      auto decoded = dtn::decode_bundle(dtn::as_span(image));
      if (!decoded.ok()) {
        std::cerr << "undecodable frame: " << to_string(decoded.error().code) << "\n";
        return 3;
      }
      const dtn::Bundle& bundle = decoded.value();

      dtn::Verdict verdict = dtn::verify(bundle, policy);
      std::cout << "received " << dtn::id_of(bundle).str() << " ("
                << bundle.payload.size() << " byte payload, verification "
                << to_string(verdict) << ")" << std::endl;
      if (verdict == dtn::Verdict::fail_mismatch ||
          verdict == dtn::Verdict::fail_absent)
        return 2;

      if (out.is_open()) {
        out.write(reinterpret_cast<const char*>(bundle.payload.data()),
                  static_cast<std::streamsize>(bundle.payload.size()));
        out.flush();
      }
      ++received;
    }
    return 0;
  } catch (const dtn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
