#include <atomic>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dtn/agent.hpp"
#include "dtn/cla.hpp"
#include "dtn/errors.hpp"
#include "dtn/scenario.hpp"
#include "dtn/tcp.hpp"

namespace {

using namespace dtn;

// Milliseconds since 2000-01-01T00:00:00 UTC, the wire format's epoch.
constexpr std::int64_t kEpochOffsetMs = 946684800000;

std::int64_t true_now_ms() {
  auto now = std::chrono::system_clock::now().time_since_epoch();
  return std::chrono::duration_cast<std::chrono::milliseconds>(now).count() -
         kEpochOffsetMs;
}

class Node {
 public:
  explicit Node(NodeConfig config) : agent_(std::move(config)) {
    agent_.set_deliver_handler(
        [this](const Bundle& bundle, const Bytes& image, std::uint64_t) {
          deliver(bundle.destination.text(), image);
        });
  }

  const NodeConfig& config() const { return agent_.config(); }

  void log(const std::string& line) {
    std::lock_guard<std::mutex> lock(log_mu_);
    std::cout << "[" << config().node_id << "] " << line << std::endl;
  }

  // Inbound frame stream: every frame is one bundle image.
  void handle_frames(TcpLink& link, Bytes first_frame) {
    Bytes image = std::move(first_frame);
    for (;;) {
      on_image(std::move(image));
      try {
        image = cla_recv(link);
      } catch (const Error&) {
        return;  // stream ended or broke; nothing to undo
      }
    }
  }

  // Consumer registration: deliverable bundles for this endpoint are framed
  // back over the registering connection.
  void handle_consumer(std::shared_ptr<TcpLink> link, const std::string& eid) {
    std::vector<Bytes> backlog;
    {
      std::lock_guard<std::mutex> lock(io_mu_);
      consumers_[eid] = link;
      backlog = std::move(pending_[eid]);
      pending_.erase(eid);
    }
    log("consumer registered for " + eid +
        (backlog.empty() ? "" : " (" + std::to_string(backlog.size()) + " pending)"));
    for (const Bytes& image : backlog) send_to_consumer(eid, image);

    std::uint8_t byte;
    while (link->read_fully(&byte, 1) == 1) {
    }
    {
      std::lock_guard<std::mutex> lock(io_mu_);
      auto it = consumers_.find(eid);
      if (it != consumers_.end() && it->second == link) consumers_.erase(it);
    }
    log("consumer for " + eid + " disconnected");
  }

  // One forwarding pass; failed sends go back into the store.
  void forward_once() {
    DispatchResult result;
    std::int64_t now = true_now_ms();
    {
      std::lock_guard<std::mutex> lock(agent_mu_);
      result = agent_.dispatch(now, [this](const std::string& hop) {
        return config().peers.count(hop) > 0;
      });
    }
    for (const DroppedBundle& drop : result.drops)
      log(std::string(to_string(drop.cause)) + " " + drop.id.str() + " (dispatch)");

    for (Transmission& tx : result.transmissions) {
      if (send_to_peer(tx.next_hop, tx.image)) {
        log("forwarded " + tx.id.str() + " to " + tx.next_hop);
        continue;
      }
      log("send to " + tx.next_hop + " failed, requeueing " + tx.id.str());
      requeue(std::move(tx));
    }
  }

  void on_image(Bytes image) {
    auto decoded = decode_bundle_ex(as_span(image));
    if (!decoded.ok()) {
      log(std::string("dropped_decode_error (") + to_string(decoded.error().code) +
          ")");
      return;
    }
    BundleId id = id_of(decoded.value().bundle);
    Disposition d;
    {
      std::lock_guard<std::mutex> lock(agent_mu_);
      d = agent_.receive(decoded.value().bundle, std::move(image),
                         decoded.value().payload, true_now_ms());
    }
    log(std::string(to_string(d)) + " " + id.str());
    if (d == Disposition::queued) forward_once();
  }

 private:
  void deliver(const std::string& eid, const Bytes& image) {
    bool sent = send_to_consumer(eid, image);
    if (!sent) {
      std::lock_guard<std::mutex> lock(io_mu_);
      pending_[eid].push_back(image);
    }
  }

  bool send_to_consumer(const std::string& eid, const Bytes& image) {
    std::shared_ptr<TcpLink> link;
    {
      std::lock_guard<std::mutex> lock(io_mu_);
      auto it = consumers_.find(eid);
      if (it == consumers_.end()) return false;
      link = it->second;
    }
    try {
      cla_send(*link, as_span(image));
      return true;
    } catch (const Error&) {
      std::lock_guard<std::mutex> lock(io_mu_);
      auto it = consumers_.find(eid);
      if (it != consumers_.end() && it->second == link) consumers_.erase(it);
      return false;
    }
  }

  bool send_to_peer(const std::string& hop, const Bytes& image) {
    auto address = config().peers.find(hop);
    if (address == config().peers.end()) return false;
    // One fresh attempt after a stale cached connection fails.
    for (int attempt = 0; attempt < 2; ++attempt) {
      std::shared_ptr<TcpLink> link;
      try {
        {
          std::lock_guard<std::mutex> lock(io_mu_);
          auto it = peer_links_.find(hop);
          if (it != peer_links_.end()) link = it->second;
        }
        if (!link) {
          auto [host, port] = split_host_port(address->second);
          link = TcpLink::connect(host, port);
          std::lock_guard<std::mutex> lock(io_mu_);
          peer_links_[hop] = link;
        }
        cla_send(*link, as_span(image));
        return true;
      } catch (const Error&) {
        std::lock_guard<std::mutex> lock(io_mu_);
        peer_links_.erase(hop);
      }
    }
    return false;
  }

  void requeue(Transmission tx) {
    auto decoded = decode_bundle_ex(as_span(tx.image));
    if (!decoded.ok()) return;  // rotted in the meantime; nothing to keep
    StoredBundle stored;
    stored.image = std::move(tx.image);
    stored.payload = tx.payload;
    stored.dest_node = std::string(decoded.value().bundle.destination.node());
    stored.arrival_ms = true_now_ms();
    std::lock_guard<std::mutex> lock(agent_mu_);
    if (agent_.store().size() < config().storage_limit)
      agent_.store().push_back(std::move(stored));
  }

  Agent agent_;
  std::mutex agent_mu_;
  std::mutex io_mu_;
  std::mutex log_mu_;
  std::map<std::string, std::shared_ptr<TcpLink>> consumers_;
  std::map<std::string, std::vector<Bytes>> pending_;
  std::map<std::string, std::shared_ptr<TcpLink>> peer_links_;
};

// First byte decides what a connection is: 'R' registers a consumer
// ("R <eid>\n"); anything else starts a frame stream, whose length header
// always begins 0x00 under the frame cap.
void serve_connection(Node& node, std::shared_ptr<TcpLink> link) {
  std::uint8_t first;
  if (link->read_fully(&first, 1) != 1) return;

  if (first == 'R') {
    std::string line;
    std::uint8_t byte;
    while (line.size() < 256 && link->read_fully(&byte, 1) == 1) {
      if (byte == '\n') break;
      line.push_back(static_cast<char>(byte));
    }
    while (!line.empty() && (line.front() == ' ')) line.erase(line.begin());
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!EndpointId::parse(line).ok()) {
      node.log("rejected consumer registration '" + line + "'");
      return;
    }
    node.handle_consumer(std::move(link), line);
    return;
  }

  // Finish the frame whose first header byte is already consumed.
  std::uint8_t rest[3];
  if (link->read_fully(rest, sizeof rest) != sizeof rest) return;
  std::uint64_t len = (std::uint64_t{first} << 24) | (std::uint64_t{rest[0]} << 16) |
                      (std::uint64_t{rest[1]} << 8) | std::uint64_t{rest[2]};
  if (len > kMaxFrameBytes) return;
  Bytes image(static_cast<std::size_t>(len));
  if (len > 0 && link->read_fully(image.data(), image.size()) != image.size()) return;

  node.handle_frames(*link, std::move(image));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Store-and-forward node over TCP"};
  std::string config_path;
  std::string host = "127.0.0.1";
  std::uint16_t port = kDefaultPort;
  std::uint32_t interval_ms = 200;
  app.add_option("--config", config_path, "Node configuration JSON")->required();
  app.add_option("--host", host, "Listen address")->capture_default_str();
  app.add_option("--port", port, "Listen port")->capture_default_str();
  app.add_option("--forward-interval-ms", interval_ms,
                 "Delay between forwarding passes")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    Node node(load_node_config(config_path));
    TcpListener listener = TcpListener::bind(host, port);
    node.log("listening on " + host + ":" + std::to_string(listener.port()));

    std::thread forwarder([&node, interval_ms] {
      for (;;) {
        std::this_thread::sleep_for(std::chrono::milliseconds(interval_ms));
        node.forward_once();
      }
    });
    forwarder.detach();

    for (;;) {
      std::shared_ptr<TcpLink> link = listener.accept();
      std::thread([&node, link] { serve_connection(node, link); }).detach();
    }
  } catch (const dtn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
