#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <ostream>
#include <string_view>
#include <vector>

#include "erasure/core.hpp"

namespace erasure {

enum class Direction : std::uint8_t { V_TO_P = 0, P_TO_V = 1 };

/// Wire kind-codes. `Ready` is sent by a prover that streams its memory image
/// once the image is stored, so timed rounds never start while it is busy.
enum class MessageKind : std::uint8_t {
  Nonce = 0x01,
  DataChunk = 0x02,
  Accumulator = 0x03,
  Challenge = 0x04,
  Response = 0x05,
  FinalNonce = 0x06,
  Proof = 0x07,
  Verdict = 0x08,
  Ready = 0x09,
};

std::string_view to_string(Direction d);
std::string_view to_string(MessageKind k);

struct Message {
  Direction direction = Direction::V_TO_P;
  MessageKind kind = MessageKind::Nonce;
  Bytes payload;

  friend bool operator==(const Message&, const Message&) = default;
};

struct TranscriptEntry {
  std::uint64_t send_ns = 0;
  std::uint64_t recv_ns = 0;
  Message message;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;
  std::uint64_t bytes_v_to_p = 0;
  std::uint64_t bytes_p_to_v = 0;
  std::uint64_t message_count = 0;

  void record(std::uint64_t send_ns, std::uint64_t recv_ns, const Message& m);

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// Monotone integer nanosecond clock, advanced only by explicit charges.
class VirtualClock {
 public:
  std::uint64_t now() const { return now_; }
  void charge(std::uint64_t ns) { now_ += ns; }
  void advance_to(std::uint64_t t) {
    if (t > now_) now_ = t;
  }

 private:
  std::uint64_t now_ = 0;
};

/// overhead + latency + ceil(len * 1e9 / bandwidth), exact integer arithmetic.
std::uint64_t message_cost(const NetworkProfile& net, std::size_t payload_len);

/// One party's view of the channel plus its notion of time. In simulation,
/// time is the party's virtual clock and compute is charged explicitly; over
/// a real transport, time is the wall clock and charges are no-ops.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual void send(Message m) = 0;
  virtual Message recv() = 0;
  virtual bool has_pending() const = 0;
  virtual std::uint64_t now_ns() const = 0;
  virtual void charge(std::uint64_t ns) = 0;
};

/// Lock-step simulated link. Sends are stop-and-wait: the sender's clock
/// advances to the delivery time, and the receiver's clock is raised to it on
/// recv. Both directions share one transcript.
class SimChannel {
 public:
  explicit SimChannel(NetworkProfile net, std::uint64_t prover_extra_latency_ns = 0);

  ~SimChannel();
  Endpoint& verifier();
  Endpoint& prover();
  VirtualClock& verifier_clock() { return clocks_[0]; }
  VirtualClock& prover_clock() { return clocks_[1]; }
  const Transcript& transcript() const { return transcript_; }
  Transcript take_transcript() { return std::move(transcript_); }

  void close() { closed_ = true; }
  bool closed() const { return closed_; }

  /// Sum of per-message costs actually charged so far.
  std::uint64_t network_time_charged() const { return charged_; }

 private:
  class Side;
  struct InFlight {
    Message message;
    std::uint64_t arrival_ns;
  };

  void send_from(int side, Message m);
  Message recv_at(int side);

  NetworkProfile net_;
  std::uint64_t extra_latency_ns_;
  VirtualClock clocks_[2];
  std::deque<InFlight> inbox_[2];
  Transcript transcript_;
  std::uint64_t charged_ = 0;
  bool closed_ = false;
  std::unique_ptr<Side> verifier_;
  std::unique_ptr<Side> prover_;
};

// Wire framing: direction (1 byte), kind-code (1 byte), big-endian u32
// payload length, payload.
Bytes encode_frame(const Message& m);
Message decode_frame(ByteView frame);

/// JSON lines, one object per entry; payload hex is cut at 64 bytes and the
/// full length is kept in "length".
void dump_transcript(const Transcript& t, std::ostream& out);

}  // namespace erasure
