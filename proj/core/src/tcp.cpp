#include "dtn/tcp.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

#include "dtn/errors.hpp"

namespace dtn {

namespace {

[[noreturn]] void throw_errno(Error::Kind kind, const std::string& what) {
  throw Error(kind, what + ": " + std::strerror(errno));
}

struct AddrInfo {
  addrinfo* list = nullptr;
  ~AddrInfo() {
    if (list) freeaddrinfo(list);
  }
};

AddrInfo resolve(const std::string& host, std::uint16_t port, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  AddrInfo out;
  std::string service = std::to_string(port);
  int rc = getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(),
                       &hints, &out.list);
  if (rc != 0)
    throw Error(Error::Kind::io_error,
                "resolving " + host + ": " + gai_strerror(rc));
  return out;
}

}  // namespace

std::unique_ptr<TcpLink> TcpLink::connect(const std::string& host,
                                          std::uint16_t port) {
  AddrInfo addrs = resolve(host, port, false);
  int last_errno = 0;
  for (addrinfo* ai = addrs.list; ai; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      int one = 1;
      setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return std::make_unique<TcpLink>(fd);
    }
    last_errno = errno;
    ::close(fd);
  }
  errno = last_errno;
  throw_errno(Error::Kind::io_error,
              "connecting to " + host + ":" + std::to_string(port));
}

TcpLink::TcpLink(int fd) : fd_(fd) {}

TcpLink::~TcpLink() { close(); }

void TcpLink::write_all(const std::uint8_t* data, std::size_t len) {
  std::lock_guard<std::mutex> lock(write_mu_);
  if (fd_ < 0) throw Error(Error::Kind::link_down, "link is down");
  std::size_t sent = 0;
  while (sent < len) {
    ssize_t n = ::send(fd_, data + sent, len - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno(Error::Kind::link_down, "send failed");
    }
    sent += static_cast<std::size_t>(n);
  }
}

std::size_t TcpLink::read_fully(std::uint8_t* data, std::size_t len) {
  std::size_t got = 0;
  while (got < len) {
    if (fd_ < 0) {
      if (got == 0) return 0;
      break;
    }
    ssize_t n = ::recv(fd_, data + got, len - got, 0);
    if (n == 0) break;
    if (n < 0) {
      if (errno == EINTR) continue;
      if (got == 0 && (errno == ECONNRESET || errno == EBADF)) return 0;
      throw_errno(Error::Kind::link_down, "recv failed");
    }
    got += static_cast<std::size_t>(n);
  }
  return got;
}

bool TcpLink::up() const { return fd_ >= 0; }

void TcpLink::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
}

TcpListener TcpListener::bind(const std::string& host, std::uint16_t port) {
  AddrInfo addrs = resolve(host, port, true);
  int last_errno = 0;
  for (addrinfo* ai = addrs.list; ai; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    int one = 1;
    setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 16) == 0) {
      std::uint16_t bound = port;
      if (bound == 0) {
        sockaddr_storage ss{};
        socklen_t slen = sizeof ss;
        if (getsockname(fd, reinterpret_cast<sockaddr*>(&ss), &slen) == 0) {
          if (ss.ss_family == AF_INET)
            bound = ntohs(reinterpret_cast<sockaddr_in*>(&ss)->sin_port);
          else if (ss.ss_family == AF_INET6)
            bound = ntohs(reinterpret_cast<sockaddr_in6*>(&ss)->sin6_port);
        }
      }
      return TcpListener(fd, bound);
    }
    last_errno = errno;
    ::close(fd);
  }
  errno = last_errno;
  throw_errno(Error::Kind::io_error,
              "binding " + host + ":" + std::to_string(port));
}

TcpListener::TcpListener(TcpListener&& other) noexcept
    : fd_(other.fd_), port_(other.port_) {
  other.fd_ = -1;
}

TcpListener::~TcpListener() { close(); }

std::unique_ptr<TcpLink> TcpListener::accept() {
  int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) throw_errno(Error::Kind::io_error, "accept failed");
  int one = 1;
  setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return std::make_unique<TcpLink>(fd);
}

void TcpListener::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

std::pair<std::string, std::uint16_t> split_host_port(const std::string& address) {
  std::size_t colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size())
    throw Error(Error::Kind::validation_error,
                "address '" + address + "' is not host:port");
  std::string host = address.substr(0, colon);
  const std::string digits = address.substr(colon + 1);
  std::uint32_t port = 0;
  for (char c : digits) {
    if (c < '0' || c > '9')
      throw Error(Error::Kind::validation_error,
                  "address '" + address + "' has a non-numeric port");
    port = port * 10 + static_cast<std::uint32_t>(c - '0');
    if (port > 65535)
      throw Error(Error::Kind::validation_error,
                  "address '" + address + "' port out of range");
  }
  if (port == 0)
    throw Error(Error::Kind::validation_error,
                "address '" + address + "' port out of range");
  return {host, static_cast<std::uint16_t>(port)};
}

}  // namespace dtn
