#include "dtn/cla.hpp"

#include <algorithm>
#include <string>

#include "dtn/errors.hpp"

namespace dtn {

Bytes Link::transit_transform(ByteSpan bundle_bytes) {
  return Bytes(bundle_bytes.begin(), bundle_bytes.end());
}

void cla_send(Link& link, ByteSpan bundle_bytes) {
  if (bundle_bytes.size() > kMaxFrameBytes)
    throw Error(Error::Kind::frame_too_large,
                "bundle image of " + std::to_string(bundle_bytes.size()) +
                    " bytes exceeds frame cap");
  if (!link.up()) throw Error(Error::Kind::link_down, "link is down");

  Bytes image = link.transit_transform(bundle_bytes);

  // One frame, one write: concurrent senders on a shared link must not
  // interleave header and body.
  Bytes frame;
  frame.reserve(4 + image.size());
  std::uint32_t len = static_cast<std::uint32_t>(image.size());
  frame.push_back(static_cast<std::uint8_t>(len >> 24));
  frame.push_back(static_cast<std::uint8_t>(len >> 16));
  frame.push_back(static_cast<std::uint8_t>(len >> 8));
  frame.push_back(static_cast<std::uint8_t>(len));
  frame.insert(frame.end(), image.begin(), image.end());
  link.write_all(frame.data(), frame.size());
}

Bytes cla_recv(Link& link) {
  std::uint8_t header[4];
  std::size_t got = link.read_fully(header, sizeof header);
  if (got == 0)
    throw Error(Error::Kind::link_down, "end of stream before a frame");
  if (got < sizeof header)
    throw Error(Error::Kind::bad_frame, "stream cut inside a frame header");

  std::uint64_t len = (std::uint64_t{header[0]} << 24) | (std::uint64_t{header[1]} << 16) |
                      (std::uint64_t{header[2]} << 8) | std::uint64_t{header[3]};
  if (len > kMaxFrameBytes)
    throw Error(Error::Kind::bad_frame,
                "frame length " + std::to_string(len) + " exceeds cap");

  Bytes image(static_cast<std::size_t>(len));
  if (len > 0) {
    got = link.read_fully(image.data(), image.size());
    if (got < image.size())
      throw Error(Error::Kind::bad_frame, "stream cut inside a frame body");
  }
  return image;
}

SimulatedLink::SimulatedLink(FaultModel model, std::uint64_t seed)
    : model_(model), rng_(seed) {}

void SimulatedLink::write_all(const std::uint8_t* data, std::size_t len) {
  if (!up_) throw Error(Error::Kind::link_down, "link is down");
  pipe_.insert(pipe_.end(), data, data + len);
}

std::size_t SimulatedLink::read_fully(std::uint8_t* data, std::size_t len) {
  std::size_t got = std::min(len, pipe_.size());
  std::copy_n(pipe_.begin(), got, data);
  pipe_.erase(pipe_.begin(), pipe_.begin() + static_cast<std::ptrdiff_t>(got));
  return got;
}

Bytes SimulatedLink::transit_transform(ByteSpan bundle_bytes) {
  return corrupt_transit(bundle_bytes, model_.transit_ber, rng_);
}

}  // namespace dtn
