#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>

#include "dtn/cla.hpp"

namespace dtn {

// TCP convergence-layer adapter. Pure transport: injects no faults, frames
// pass through byte-identical. Whole frames are written under an internal
// lock so concurrent senders sharing a link cannot interleave.
class TcpLink : public Link {
 public:
  static std::unique_ptr<TcpLink> connect(const std::string& host, std::uint16_t port);

  explicit TcpLink(int fd);
  ~TcpLink() override;

  TcpLink(const TcpLink&) = delete;
  TcpLink& operator=(const TcpLink&) = delete;

  void write_all(const std::uint8_t* data, std::size_t len) override;
  std::size_t read_fully(std::uint8_t* data, std::size_t len) override;
  bool up() const override;

  void close();
  int fd() const { return fd_; }

 private:
  int fd_ = -1;
  std::mutex write_mu_;
};

class TcpListener {
 public:
  static TcpListener bind(const std::string& host, std::uint16_t port);

  TcpListener(TcpListener&& other) noexcept;
  ~TcpListener();

  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::unique_ptr<TcpLink> accept();

  std::uint16_t port() const { return port_; }
  void close();

 private:
  explicit TcpListener(int fd, std::uint16_t port) : fd_(fd), port_(port) {}

  int fd_ = -1;
  std::uint16_t port_ = 0;
};

// "host:port" -> pair; throws Error(validation_error) on a malformed address.
std::pair<std::string, std::uint16_t> split_host_port(const std::string& address);

}  // namespace dtn
