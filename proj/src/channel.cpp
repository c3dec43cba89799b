#include "erasure/channel.hpp"

#include <json.hpp>

#include "erasure/error.hpp"

namespace erasure {

std::string_view to_string(Direction d) { return d == Direction::V_TO_P ? "v2p" : "p2v"; }

std::string_view to_string(MessageKind k) {
  switch (k) {
    case MessageKind::Nonce: return "nonce";
    case MessageKind::DataChunk: return "data-chunk";
    case MessageKind::Accumulator: return "accumulator";
    case MessageKind::Challenge: return "challenge";
    case MessageKind::Response: return "response";
    case MessageKind::FinalNonce: return "final-nonce";
    case MessageKind::Proof: return "proof";
    case MessageKind::Verdict: return "verdict";
    case MessageKind::Ready: return "ready";
  }
  return "?";
}

void Transcript::record(std::uint64_t send_ns, std::uint64_t recv_ns, const Message& m) {
  entries.push_back(TranscriptEntry{send_ns, recv_ns, m});
  if (m.direction == Direction::V_TO_P) {
    bytes_v_to_p += m.payload.size();
  } else {
    bytes_p_to_v += m.payload.size();
  }
  ++message_count;
}

std::uint64_t message_cost(const NetworkProfile& net, std::size_t payload_len) {
  const unsigned __int128 scaled = static_cast<unsigned __int128>(payload_len) * 1'000'000'000u;
  const unsigned __int128 bw = net.bandwidth_bytes_per_s;
  const auto transfer = static_cast<std::uint64_t>((scaled + bw - 1) / bw);
  return net.per_message_overhead_ns + net.latency_ns + transfer;
}

class SimChannel::Side final : public Endpoint {
 public:
  Side(SimChannel& ch, int index) : ch_(ch), index_(index) {}

  void send(Message m) override { ch_.send_from(index_, std::move(m)); }
  Message recv() override { return ch_.recv_at(index_); }
  bool has_pending() const override { return !ch_.inbox_[index_].empty(); }
  std::uint64_t now_ns() const override { return ch_.clocks_[index_].now(); }
  void charge(std::uint64_t ns) override { ch_.clocks_[index_].charge(ns); }

 private:
  SimChannel& ch_;
  int index_;
};

SimChannel::SimChannel(NetworkProfile net, std::uint64_t prover_extra_latency_ns)
    : net_(std::move(net)),
      extra_latency_ns_(prover_extra_latency_ns),
      verifier_(std::make_unique<Side>(*this, 0)),
      prover_(std::make_unique<Side>(*this, 1)) {}

SimChannel::~SimChannel() = default;
Endpoint& SimChannel::verifier() { return *verifier_; }
Endpoint& SimChannel::prover() { return *prover_; }

void SimChannel::send_from(int side, Message m) {
  if (closed_) throw Error(ErrorCode::ChannelClosed, "send on closed channel");
  if (m.payload.size() > 0xFFFFFFFFull) throw Error(ErrorCode::OutOfRange, "payload too large");
  m.direction = side == 0 ? Direction::V_TO_P : Direction::P_TO_V;
  std::uint64_t cost = message_cost(net_, m.payload.size());
  if (side == 1) cost += extra_latency_ns_;

  VirtualClock& clock = clocks_[side];
  const std::uint64_t sent = clock.now();
  const std::uint64_t arrival = sent + cost;
  clock.advance_to(arrival);
  charged_ += cost;
  transcript_.record(sent, arrival, m);
  inbox_[1 - side].push_back(InFlight{std::move(m), arrival});
}

Message SimChannel::recv_at(int side) {
  auto& q = inbox_[side];
  if (q.empty()) {
    if (closed_) throw Error(ErrorCode::ChannelClosed, "recv on closed channel");
    throw Error(ErrorCode::ProtocolDesync, "recv with no message in flight");
  }
  InFlight f = std::move(q.front());
  q.pop_front();
  clocks_[side].advance_to(f.arrival_ns);
  return std::move(f.message);
}

Bytes encode_frame(const Message& m) {
  if (m.payload.size() > 0xFFFFFFFFull) throw Error(ErrorCode::OutOfRange, "payload too large");
  Bytes out;
  out.reserve(6 + m.payload.size());
  out.push_back(static_cast<std::uint8_t>(m.direction));
  out.push_back(static_cast<std::uint8_t>(m.kind));
  const auto len = static_cast<std::uint32_t>(m.payload.size());
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  append(out, m.payload);
  return out;
}

Message decode_frame(ByteView frame) {
  if (frame.size() < 6) throw Error(ErrorCode::ParseError, "frame shorter than header");
  Message m;
  if (frame[0] > 1) throw Error(ErrorCode::ParseError, "bad direction byte");
  m.direction = static_cast<Direction>(frame[0]);
  if (frame[1] < 0x01 || frame[1] > 0x09) throw Error(ErrorCode::ParseError, "unknown kind-code");
  m.kind = static_cast<MessageKind>(frame[1]);
  std::uint32_t len = 0;
  for (int i = 2; i < 6; ++i) len = (len << 8) | frame[i];
  if (frame.size() != 6 + static_cast<std::size_t>(len)) {
    throw Error(ErrorCode::ParseError, "frame length mismatch");
  }
  m.payload.assign(frame.begin() + 6, frame.end());
  return m;
}

void dump_transcript(const Transcript& t, std::ostream& out) {
  constexpr std::size_t kMaxHex = 64;
  for (const auto& e : t.entries) {
    const auto& p = e.message.payload;
    const std::size_t shown = std::min(p.size(), kMaxHex);
    nlohmann::ordered_json line = {
        {"send_ns", e.send_ns},
        {"recv_ns", e.recv_ns},
        {"direction", std::string(to_string(e.message.direction))},
        {"kind", std::string(to_string(e.message.kind))},
        {"length", p.size()},
        {"payload_hex", to_hex(ByteView(p).first(shown))},
        {"truncated", shown < p.size()},
    };
    out << line.dump() << '\n';
  }
}

}  // namespace erasure
