#include "erasure/tcp_channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "erasure/error.hpp"

namespace erasure {
namespace {

[[noreturn]] void io_error(const std::string& what) {
  throw Error(ErrorCode::IoError, what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::uint8_t* data, std::size_t n) {
  while (n > 0) {
    const ssize_t w = ::send(fd, data, n, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      if (errno == EPIPE || errno == ECONNRESET) throw Error(ErrorCode::ChannelClosed, "peer closed");
      io_error("send");
    }
    data += w;
    n -= static_cast<std::size_t>(w);
  }
}

/// False on orderly shutdown before the first byte.
bool read_all(int fd, std::uint8_t* data, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    const ssize_t r = ::recv(fd, data + got, n - got, 0);
    if (r == 0) {
      if (got == 0) return false;
      throw Error(ErrorCode::ChannelClosed, "peer closed mid-frame");
    }
    if (r < 0) {
      if (errno == EINTR) continue;
      io_error("recv");
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

}  // namespace

TcpEndpoint::TcpEndpoint(int fd, Direction outgoing)
    : fd_(fd), outgoing_(outgoing), start_(std::chrono::steady_clock::now()) {
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

TcpEndpoint::~TcpEndpoint() {
  if (fd_ >= 0) ::close(fd_);
}

std::uint64_t TcpEndpoint::now_ns() const {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                        std::chrono::steady_clock::now() - start_)
                                        .count());
}

void TcpEndpoint::send(Message m) {
  m.direction = outgoing_;
  const Bytes frame = encode_frame(m);
  const std::uint64_t t = now_ns();
  write_all(fd_, frame.data(), frame.size());
  transcript_.record(t, t, m);
}

Message TcpEndpoint::recv() {
  std::uint8_t header[6];
  if (!read_all(fd_, header, sizeof(header))) throw Error(ErrorCode::ChannelClosed, "peer closed");
  std::uint32_t len = 0;
  for (int i = 2; i < 6; ++i) len = (len << 8) | header[i];
  Bytes frame(header, header + 6);
  frame.resize(6 + static_cast<std::size_t>(len));
  if (len > 0 && !read_all(fd_, frame.data() + 6, len)) {
    throw Error(ErrorCode::ChannelClosed, "peer closed mid-frame");
  }
  Message m = decode_frame(frame);
  const std::uint64_t t = now_ns();
  transcript_.record(t, t, m);
  return m;
}

bool TcpEndpoint::has_pending() const {
  pollfd p{fd_, POLLIN, 0};
  return ::poll(&p, 1, 0) > 0 && (p.revents & POLLIN);
}

TcpListener::TcpListener(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) io_error("socket");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
    ::close(fd_);
    io_error("bind");
  }
  if (::listen(fd_, 1) < 0) {
    ::close(fd_);
    io_error("listen");
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpEndpoint> TcpListener::accept(Direction outgoing) {
  const int c = ::accept(fd_, nullptr, nullptr);
  if (c < 0) io_error("accept");
  return std::make_unique<TcpEndpoint>(c, outgoing);
}

std::unique_ptr<TcpEndpoint> tcp_connect(const std::string& host, std::uint16_t port,
                                         Direction outgoing) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (::getaddrinfo(host.c_str(), service.c_str(), &hints, &res) != 0 || res == nullptr) {
    throw Error(ErrorCode::IoError, "cannot resolve " + host);
  }
  const int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd < 0) {
    ::freeaddrinfo(res);
    io_error("socket");
  }
  if (::connect(fd, res->ai_addr, res->ai_addrlen) < 0) {
    ::freeaddrinfo(res);
    ::close(fd);
    io_error("connect");
  }
  ::freeaddrinfo(res);
  return std::make_unique<TcpEndpoint>(fd, outgoing);
}

}  // namespace erasure
