#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "erasure/channel.hpp"

namespace erasure {

/// Real-wire endpoint over a connected TCP socket using the shared framing.
/// Time is wall-clock nanoseconds since construction; `charge` is a no-op
/// because computation takes real time. One sender and one receiver per
/// direction; not safe for concurrent sends.
class TcpEndpoint final : public Endpoint {
 public:
  TcpEndpoint(int fd, Direction outgoing);
  ~TcpEndpoint() override;
  TcpEndpoint(const TcpEndpoint&) = delete;
  TcpEndpoint& operator=(const TcpEndpoint&) = delete;

  void send(Message m) override;
  Message recv() override;
  bool has_pending() const override;
  std::uint64_t now_ns() const override;
  void charge(std::uint64_t) override {}

  /// Local record of frames sent and received, stamped with wall time.
  const Transcript& transcript() const { return transcript_; }

 private:
  int fd_;
  Direction outgoing_;
  std::chrono::steady_clock::time_point start_;
  Transcript transcript_;
};

class TcpListener {
 public:
  /// Binds 127.0.0.1:`port` (0 picks an ephemeral port).
  explicit TcpListener(std::uint16_t port = 0);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<TcpEndpoint> accept(Direction outgoing);

 private:
  int fd_;
  std::uint16_t port_;
};

std::unique_ptr<TcpEndpoint> tcp_connect(const std::string& host, std::uint16_t port,
                                         Direction outgoing);

}  // namespace erasure
