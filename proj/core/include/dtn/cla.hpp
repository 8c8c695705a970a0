#pragma once

#include <cstdint>
#include <deque>
#include <memory>

#include "dtn/bytes.hpp"
#include "dtn/fault.hpp"

namespace dtn {

// Convergence-layer framing: 4-byte big-endian length, then the bundle image.
// No handshake, no trailer. Frames above 2^24 bytes are refused.
inline constexpr std::uint64_t kMaxFrameBytes = 1u << 24;
inline constexpr std::uint16_t kDefaultPort = 4556;

class Link {
 public:
  virtual ~Link() = default;

  virtual void write_all(const std::uint8_t* data, std::size_t len) = 0;

  // Bytes actually read: len on success, 0 on clean end-of-stream before the
  // first byte, short on a stream cut mid-way. Throws Error(link_down) when
  // the link is unusable.
  virtual std::size_t read_fully(std::uint8_t* data, std::size_t len) = 0;

  virtual bool up() const = 0;

  // Adapter hook applied to the bundle image before framing; the identity
  // everywhere except the simulated adapter, which injects transit faults
  // here. Framing bytes themselves are never corrupted.
  virtual Bytes transit_transform(ByteSpan bundle_bytes);
};

// Throws Error(frame_too_large) past the frame cap and Error(link_down) when
// the link refuses the write.
void cla_send(Link& link, ByteSpan bundle_bytes);

// One whole frame. Throws Error(link_down) on clean end-of-stream before a
// frame starts, Error(bad_frame) on a truncated frame or an unsatisfiable
// length.
Bytes cla_recv(Link& link);

// In-memory adapter: a single-threaded loopback pipe whose send side applies
// corrupt_transit to the bundle image.
class SimulatedLink : public Link {
 public:
  SimulatedLink(FaultModel model, std::uint64_t seed);

  void write_all(const std::uint8_t* data, std::size_t len) override;
  std::size_t read_fully(std::uint8_t* data, std::size_t len) override;
  bool up() const override { return up_; }
  Bytes transit_transform(ByteSpan bundle_bytes) override;

  void close() { up_ = false; }

 private:
  std::deque<std::uint8_t> pipe_;
  FaultModel model_;
  Rng rng_;
  bool up_ = true;
};

}  // namespace dtn
