#include "erasure/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include "erasure/error.hpp"
#include "erasure/labelling.hpp"
#include "erasure/memory.hpp"
#include "erasure/tcp_channel.hpp"

namespace erasure {

ProverBehaviour ProverBehaviour::skip_fraction(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidConfig, "InvalidConfig(fraction): must be in [0, 1]");
  return {Kind::SKIP_FRACTION, p, 0};
}

std::uint64_t rtt_bound_ns(const NetworkProfile& net) {
  const std::uint64_t honest = message_cost(net, 8) + message_cost(net, kBlockBytes);
  return honest + (honest + 1) / 2;
}

std::size_t prover_scratch_blocks(ProtocolId id) {
  switch (id) {
    case ProtocolId::PT: return 1;
    case ProtocolId::KL: return 2;
    case ProtocolId::DKW: return 2;
    case ProtocolId::KK: return 3;
    case ProtocolId::POSE_R: return 1;
    case ProtocolId::POSE_G: return 3;
    case ProtocolId::POSE_L: return 2;
  }
  return kMaxScratchBlocks;
}

namespace {

Message make(MessageKind kind, Bytes payload) { return Message{Direction::V_TO_P, kind, std::move(payload)}; }

void expect(const Message& m, MessageKind kind) {
  if (m.kind != kind) {
    throw Error(ErrorCode::ProtocolDesync, "expected " + std::string(to_string(kind)) + ", got " +
                                               std::string(to_string(m.kind)));
  }
}

Digest256 to_digest(ByteView v) {
  if (v.size() != kBlockBytes) throw Error(ErrorCode::ProtocolDesync, "expected a 32-byte payload");
  Digest256 d;
  std::copy(v.begin(), v.end(), d.value.begin());
  return d;
}

Hasher::Meter meter(Endpoint& ep, const ScenarioConfig& cfg, std::uint64_t speedup) {
  return [&ep, device = cfg.device, hash = cfg.hash, speedup](std::size_t len) {
    ep.charge(hash_cost_ns(device, hash, len) / speedup);
  };
}

LabellingKind labelling_of(ProtocolId id) {
  switch (id) {
    case ProtocolId::DKW: return LabellingKind::FULL_DEPENDENCY;
    case ProtocolId::KK:
    case ProtocolId::POSE_G: return LabellingKind::STACKED_BITREVERSAL;
    default: return LabellingKind::CHAIN;
  }
}

/// Fills `store` with the protocol's labels and returns the value the prover
/// commits to. The chain's last label is sealed with the block count.
Digest256 label_and_commit(LabellingKind kind, Hasher& h, const Digest256& nonce, std::size_t n,
                           LabelStore& store) {
  switch (kind) {
    case LabellingKind::FULL_DEPENDENCY: return full_dependency_labels(h, nonce, n, store);
    case LabellingKind::STACKED_BITREVERSAL:
      return stacked_bitreversal_labels(h, nonce, n, ceil_log2(n), store);
    case LabellingKind::CHAIN: {
      Bytes in(kBlockBytes);
      const Digest256 last = chain_labels(h, nonce, n, store);
      std::copy(last.value.begin(), last.value.end(), in.begin());
      append_le64(in, n);
      return h(in);
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown labelling");
}

class Party {
 public:
  virtual ~Party() = default;
  virtual void start() {}
  virtual void on_message(const Message& m) = 0;
  virtual bool finished() const = 0;
};

// ---------------------------------------------------------------- verifiers

class Verifier : public Party {
 public:
  Verifier(const ScenarioConfig& cfg, Endpoint& ep)
      : cfg_(cfg), ep_(ep), rng_(cfg.hash, cfg.seed, "verifier"), hasher_(cfg.hash, meter(ep, cfg, kVerifierSpeedup)) {}

  bool finished() const override { return decided_; }
  void on_message(const Message& m) final {
    if (!decided_) handle(m);
  }

  bool accepted() const { return accepted_; }
  const std::optional<std::string>& reason() const { return reason_; }
  std::uint64_t decided_at() const { return decided_at_; }
  const std::vector<std::uint64_t>& rtts() const { return rtts_; }

 protected:
  virtual void handle(const Message& m) = 0;

  void decide(bool ok, std::string reason = {}) {
    decided_ = true;
    accepted_ = ok;
    if (!ok) reason_ = std::move(reason);
    decided_at_ = ep_.now_ns();
    ep_.send(make(MessageKind::Verdict, Bytes{static_cast<std::uint8_t>(ok ? 1 : 0)}));
  }

  void stream(const Bytes& data) {
    for (std::size_t off = 0; off < data.size(); off += kChunkBytes) {
      const std::size_t len = std::min(kChunkBytes, data.size() - off);
      ep_.send(make(MessageKind::DataChunk, Bytes(data.begin() + off, data.begin() + off + len)));
    }
  }

  Digest256 expected_pt_proof(const Bytes& data) {
    const std::size_t n = data.size();
    return hasher_.hmac(ByteView(data).subspan(n - kBlockBytes), ByteView(data).first(n - kBlockBytes));
  }

  void send_timed_challenge() {
    challenge_ = rng_.uniform(cfg_.blocks());
    Bytes p;
    append_le64(p, challenge_);
    challenge_sent_at_ = ep_.now_ns();
    ep_.send(make(MessageKind::Challenge, std::move(p)));
  }

  /// Checks a timed response; false once a verdict has been issued.
  bool check_timed_response(const Message& m, const Digest256& expected) {
    expect(m, MessageKind::Response);
    const std::uint64_t rtt = ep_.now_ns() - challenge_sent_at_;
    rtts_.push_back(rtt);
    if (rtt > rtt_bound_ns(cfg_.network)) {
      decide(false, "rtt-exceeded");
      return false;
    }
    if (to_digest(m.payload) != expected) {
      decide(false, "content-mismatch");
      return false;
    }
    return true;
  }

  ScenarioConfig cfg_;
  Endpoint& ep_;
  Rng rng_;
  Hasher hasher_;
  std::uint64_t challenge_ = 0;

 private:
  bool decided_ = false;
  bool accepted_ = false;
  std::optional<std::string> reason_;
  std::uint64_t decided_at_ = 0;
  std::uint64_t challenge_sent_at_ = 0;
  std::vector<std::uint64_t> rtts_;
};

class PtVerifier final : public Verifier {
 public:
  using Verifier::Verifier;
  void start() override {
    data_ = rng_.bytes(cfg_.memory_bytes);
    stream(data_);
  }

 private:
  void handle(const Message& m) override {
    expect(m, MessageKind::Proof);
    const bool ok = to_digest(m.payload) == expected_pt_proof(data_);
    decide(ok, "proof-mismatch");
  }
  Bytes data_;
};

class KlVerifier final : public Verifier {
 public:
  using Verifier::Verifier;
  void start() override {
    data_ = rng_.bytes(cfg_.memory_bytes);
    final_nonce_ = rng_.bytes(kBlockBytes);
    stream(data_);
    ep_.send(make(MessageKind::FinalNonce, final_nonce_));
  }

 private:
  void handle(const Message& m) override {
    expect(m, MessageKind::Proof);
    Digest256 rolling = to_digest(ByteView(data_).first(kBlockBytes));
    for (std::size_t off = 0; off < data_.size(); off += kChunkBytes) {
      const std::size_t begin = std::max(off, kBlockBytes);
      const std::size_t end = std::min(off + kChunkBytes, data_.size());
      Bytes in(rolling.value.begin(), rolling.value.end());
      if (end > begin) in.insert(in.end(), data_.begin() + begin, data_.begin() + end);
      rolling = hasher_(in);
    }
    Bytes in(rolling.value.begin(), rolling.value.end());
    append(in, final_nonce_);
    decide(to_digest(m.payload) == hasher_(in), "proof-mismatch");
  }
  Bytes data_;
  Bytes final_nonce_;
};

class PoseRVerifier final : public Verifier {
 public:
  using Verifier::Verifier;
  void start() override {
    data_ = rng_.bytes(cfg_.memory_bytes);
    stream(data_);
  }

 private:
  void handle(const Message& m) override {
    if (round_ == 0 && m.kind == MessageKind::Ready) {
      round_ = 1;
      send_timed_challenge();
      return;
    }
    if (round_ <= cfg_.rounds_r) {
      const Digest256 expected = to_digest(ByteView(data_).subspan(challenge_ * kBlockBytes, kBlockBytes));
      if (!check_timed_response(m, expected)) return;
      if (round_++ < cfg_.rounds_r) send_timed_challenge();
      return;
    }
    expect(m, MessageKind::Proof);
    decide(to_digest(m.payload) == expected_pt_proof(data_), "proof-mismatch");
  }
  Bytes data_;
  std::uint32_t round_ = 0;
};

/// DKW and KK (one batched challenge) and POSE_G / POSE_L (timed rounds).
class LabelVerifier final : public Verifier {
 public:
  LabelVerifier(const ScenarioConfig& cfg, Endpoint& ep)
      : Verifier(cfg, ep), kind_(labelling_of(cfg.protocol)), labels_(cfg.blocks()) {}

  void start() override {
    nonce_ = to_digest(rng_.bytes(kBlockBytes));
    ep_.send(make(MessageKind::Nonce, Bytes(nonce_.value.begin(), nonce_.value.end())));
  }

 private:
  void handle(const Message& m) override {
    if (!committed_) {
      expect(m, MessageKind::Accumulator);
      committed_ = true;
      const Digest256 acc = label_and_commit(kind_, hasher_, nonce_, cfg_.blocks(), labels_);
      if (to_digest(m.payload) != acc) return decide(false, "accumulator-mismatch");
      if (is_distance_bounded(cfg_.protocol)) {
        round_ = 1;
        send_timed_challenge();
      } else {
        send_batch();
      }
      return;
    }
    if (is_distance_bounded(cfg_.protocol)) {
      if (!check_timed_response(m, labels_.read(challenge_))) return;
      if (round_++ < cfg_.rounds_r) {
        send_timed_challenge();
      } else {
        decide(true);
      }
      return;
    }
    expect(m, MessageKind::Response);
    if (m.payload.size() != batch_.size() * kBlockBytes) throw Error(ErrorCode::ProtocolDesync, "short batch response");
    for (std::size_t k = 0; k < batch_.size(); ++k) {
      if (to_digest(ByteView(m.payload).subspan(k * kBlockBytes, kBlockBytes)) != labels_.read(batch_[k])) {
        return decide(false, "challenge-mismatch");
      }
    }
    decide(true);
  }

  void send_batch() {
    Bytes p;
    for (std::uint32_t k = 0; k < cfg_.challenge_count_c; ++k) {
      batch_.push_back(rng_.uniform(cfg_.blocks()));
      append_le64(p, batch_.back());
    }
    ep_.send(make(MessageKind::Challenge, std::move(p)));
  }

  LabellingKind kind_;
  VectorStore labels_;
  Digest256 nonce_{};
  bool committed_ = false;
  std::uint32_t round_ = 0;
  std::vector<std::uint64_t> batch_;
};

// ------------------------------------------------------------------ provers

/// Keeps the full image on the side and writes only the selected blocks.
class SkippingStore final : public LabelStore {
 public:
  SkippingStore(MemoryModel& memory, const std::vector<bool>& keep)
      : memory_(memory), keep_(keep), shadow_(memory.blocks()) {}
  std::size_t size() const override { return shadow_.size(); }
  Digest256 read(std::size_t i) override { return shadow_.read(i); }
  void write(std::size_t i, const Digest256& d) override {
    shadow_.write(i, d);
    if (keep_[i]) memory_.write_block(i, d);
  }

 private:
  MemoryModel& memory_;
  const std::vector<bool>& keep_;
  VectorStore shadow_;
};

class Prover : public Party {
 public:
  Prover(const ScenarioConfig& cfg, const ProverBehaviour& b, Endpoint& ep)
      : cfg_(cfg), behaviour_(b), ep_(ep), memory_(cfg.memory_bytes), hasher_(cfg.hash, meter(ep, cfg, 1)),
        rng_(cfg.hash, cfg.seed, "prover") {
    Rng init(cfg.hash, cfg.seed, "memory-init");
    memory_.reset([&](std::span<std::uint8_t> s) { init.fill(s); });
    memory_.attach(ep, cfg.device.copy_ns_per_byte);
    keep_.assign(memory_.blocks(), true);
    if (skipping()) {
      const std::size_t blocks = memory_.blocks();
      const auto kept = static_cast<std::size_t>(std::floor(b.fraction * static_cast<double>(blocks) + 1e-9));
      std::vector<std::size_t> order(blocks);
      for (std::size_t i = 0; i < blocks; ++i) order[i] = i;
      for (std::size_t i = 0; i < kept; ++i) std::swap(order[i], order[i + rng_.uniform(blocks - i)]);
      keep_.assign(blocks, false);
      for (std::size_t i = 0; i < kept; ++i) keep_[order[i]] = true;
    }
  }

  bool finished() const override { return done_; }
  void on_message(const Message& m) final {
    if (done_) return;
    if (m.kind == MessageKind::Verdict) {
      done_ = true;
      return;
    }
    handle(m);
  }

  const MemoryModel& memory() const { return memory_; }
  std::uint64_t fill_end() const { return fill_end_; }
  std::uint64_t hash_calls() const { return hasher_.calls(); }
  std::uint64_t bytes_read_after_fill() const { return memory_.bytes_read() - read_at_fill_end_; }

 protected:
  virtual void handle(const Message& m) = 0;

  bool skipping() const { return behaviour_.kind == ProverBehaviour::Kind::SKIP_FRACTION; }

  void end_fill() {
    fill_end_ = ep_.now_ns();
    read_at_fill_end_ = memory_.bytes_read();
    if (behaviour_.kind == ProverBehaviour::Kind::TAMPER_ONE_BYTE) {
      memory_.corrupt_byte(rng_.uniform(memory_.size()));
    }
  }

  void send(MessageKind kind, ByteView payload) {
    ep_.send(Message{Direction::P_TO_V, kind, Bytes(payload.begin(), payload.end())});
  }

  ScenarioConfig cfg_;
  ProverBehaviour behaviour_;
  Endpoint& ep_;
  MemoryModel memory_;
  Hasher hasher_;
  Rng rng_;
  std::vector<bool> keep_;

 private:
  bool done_ = false;
  std::uint64_t fill_end_ = 0;
  std::uint64_t read_at_fill_end_ = 0;
};

/// PT, KL and POSE_R: stores the streamed image block by block.
class StreamProver final : public Prover {
 public:
  using Prover::Prover;

 private:
  void handle(const Message& m) override {
    switch (m.kind) {
      case MessageKind::DataChunk: return on_chunk(m.payload);
      case MessageKind::FinalNonce: {
        expect_protocol(ProtocolId::KL);
        Bytes in(rolling_.value.begin(), rolling_.value.end());
        append(in, m.payload);
        return send(MessageKind::Proof, hasher_(in).view());
      }
      case MessageKind::Challenge: {
        expect_protocol(ProtocolId::POSE_R);
        send(MessageKind::Response, memory_.read_block(load_le64(m.payload.data())).view());
        if (++answered_ == cfg_.rounds_r) send(MessageKind::Proof, proof(skipping() ? ByteView(image_) : memory_.contents()).view());
        return;
      }
      default: expect(m, MessageKind::DataChunk);
    }
  }

  void expect_protocol(ProtocolId id) const {
    if (cfg_.protocol != id) throw Error(ErrorCode::ProtocolDesync, "unexpected message for this protocol");
  }

  void on_chunk(const Bytes& chunk) {
    if (chunk.size() % kBlockBytes != 0 || offset_ + chunk.size() > memory_.size()) {
      throw Error(ErrorCode::ProtocolDesync, "malformed data chunk");
    }
    if (skipping()) append(image_, chunk);
    for (std::size_t b = 0; b < chunk.size() / kBlockBytes; ++b) {
      const std::size_t block = offset_ / kBlockBytes + b;
      if (keep_[block]) memory_.write_block(block, ByteView(chunk).subspan(b * kBlockBytes, kBlockBytes));
    }
    if (cfg_.protocol == ProtocolId::KL) {
      if (offset_ == 0) rolling_ = to_digest(memory_.read_range(0, kBlockBytes));
      const std::size_t begin = std::max(offset_, kBlockBytes);
      const std::size_t end = offset_ + chunk.size();
      Bytes in(rolling_.value.begin(), rolling_.value.end());
      if (end > begin) append(in, memory_.read_range(begin, end - begin));
      rolling_ = hasher_(in);
    }
    offset_ += chunk.size();
    if (offset_ < memory_.size()) return;

    end_fill();
    if (cfg_.protocol == ProtocolId::PT) send(MessageKind::Proof, proof(memory_.contents()).view());
    if (cfg_.protocol == ProtocolId::POSE_R) send(MessageKind::Ready, {});
  }

  /// HMAC keyed by the last block over everything before it. Reading the
  /// memory image counts; a colluder's copy does not.
  Digest256 proof(ByteView image) {
    const std::size_t n = image.size();
    if (image.data() == memory_.contents().data()) {
      return hasher_.hmac(memory_.read_range(n - kBlockBytes, kBlockBytes), memory_.read_range(0, n - kBlockBytes));
    }
    return hasher_.hmac(image.subspan(n - kBlockBytes), image.first(n - kBlockBytes));
  }

  std::size_t offset_ = 0;
  Digest256 rolling_{};
  Bytes image_;
  std::uint32_t answered_ = 0;
};

class LabelProver final : public Prover {
 public:
  LabelProver(const ScenarioConfig& cfg, const ProverBehaviour& b, Endpoint& ep)
      : Prover(cfg, b, ep), kind_(labelling_of(cfg.protocol)) {}

 private:
  void handle(const Message& m) override {
    if (m.kind == MessageKind::Nonce) {
      const Digest256 nonce = to_digest(m.payload);
      Digest256 acc;
      if (skipping()) {
        SkippingStore store(memory_, keep_);
        acc = label_and_commit(kind_, hasher_, nonce, memory_.blocks(), store);
      } else {
        MemoryStore store(memory_);
        acc = label_and_commit(kind_, hasher_, nonce, memory_.blocks(), store);
      }
      end_fill();
      return send(MessageKind::Accumulator, acc.view());
    }
    expect(m, MessageKind::Challenge);
    if (m.payload.empty() || m.payload.size() % 8 != 0) throw Error(ErrorCode::ProtocolDesync, "malformed challenge");
    Bytes out;
    for (std::size_t k = 0; k < m.payload.size(); k += 8) {
      append(out, memory_.read_block(load_le64(m.payload.data() + k)).view());
    }
    send(MessageKind::Response, out);
  }

  LabellingKind kind_;
};

// ------------------------------------------------------------------ drivers

struct Parties {
  std::unique_ptr<Verifier> verifier;
  std::unique_ptr<Prover> prover;
};

std::unique_ptr<Verifier> make_verifier(const ScenarioConfig& cfg, Endpoint& ep) {
  switch (cfg.protocol) {
    case ProtocolId::PT: return std::make_unique<PtVerifier>(cfg, ep);
    case ProtocolId::KL: return std::make_unique<KlVerifier>(cfg, ep);
    case ProtocolId::POSE_R: return std::make_unique<PoseRVerifier>(cfg, ep);
    default: return std::make_unique<LabelVerifier>(cfg, ep);
  }
}

std::unique_ptr<Prover> make_prover(const ScenarioConfig& cfg, const ProverBehaviour& b, Endpoint& ep) {
  if (streams_memory(cfg.protocol)) return std::make_unique<StreamProver>(cfg, b, ep);
  return std::make_unique<LabelProver>(cfg, b, ep);
}

void check_runnable(const ScenarioConfig& cfg) {
  validate(cfg);
  const auto kind = labelling_of(cfg.protocol);
  if (!streams_memory(cfg.protocol) && kind == LabellingKind::STACKED_BITREVERSAL) {
    const std::uint64_t n = cfg.blocks();
    if (n < 2 || !std::has_single_bit(n)) {
      throw Error(ErrorCode::NotPowerOfTwo, "block count " + std::to_string(n) + " is not a power of two >= 2");
    }
  }
}

RunRecord assemble(const Verifier& v, const Prover& p, Transcript transcript) {
  RunRecord r;
  r.accepted = v.accepted();
  r.reject_reason = v.reason();
  r.total_time_ns = v.decided_at();
  r.fill_end_ns = p.fill_end();
  r.erasure_time_ns = p.memory().full_coverage_at().value_or(p.fill_end());
  r.verification_time_ns = r.total_time_ns > r.fill_end_ns ? r.total_time_ns - r.fill_end_ns : 0;
  r.transcript = std::move(transcript);
  r.hash_calls_prover = p.hash_calls();
  r.rtt_samples_ns = v.rtts();
  r.unwritten_count = p.memory().unwritten_count();
  const ByteView now = p.memory().contents();
  r.memory_changed = !std::equal(now.begin(), now.end(), p.memory().initial_snapshot().begin());
  r.bytes_read_after_fill = p.bytes_read_after_fill();
  return r;
}

RunRecord run_checked(const ScenarioConfig& cfg, const ProverBehaviour& b, ProtocolId id) {
  if (cfg.protocol != id) throw Error(ErrorCode::InvalidConfig, "InvalidConfig(protocol): engine mismatch");
  return execute(cfg, b);
}

}  // namespace

RunRecord execute(const ScenarioConfig& cfg, const ProverBehaviour& behaviour, const RunOptions& options) {
  check_runnable(cfg);
  const std::uint64_t extra =
      behaviour.kind == ProverBehaviour::Kind::DISTANT ? behaviour.extra_latency_ns : 0;
  SimChannel channel(cfg.network, extra);
  auto verifier = make_verifier(cfg, channel.verifier());
  auto prover = make_prover(cfg, behaviour, channel.prover());

  verifier->start();
  prover->start();
  for (;;) {
    if (channel.verifier().has_pending()) {
      verifier->on_message(channel.verifier().recv());
    } else if (channel.prover().has_pending()) {
      prover->on_message(channel.prover().recv());
    } else if (verifier->finished() && prover->finished()) {
      break;
    } else {
      throw Error(ErrorCode::ProtocolDesync, "both parties waiting");
    }
  }
  channel.close();
  if (options.memory_dump_prefix) prover->memory().dump(*options.memory_dump_prefix);
  return assemble(*verifier, *prover, channel.take_transcript());
}

RunRecord execute_over_tcp(const ScenarioConfig& cfg, const ProverBehaviour& behaviour) {
  check_runnable(cfg);
  TcpListener listener;
  std::unique_ptr<TcpEndpoint> prover_ep;
  std::exception_ptr prover_error;
  std::unique_ptr<Prover> prover;

  std::thread prover_thread([&] {
    try {
      prover_ep = tcp_connect("127.0.0.1", listener.port(), Direction::P_TO_V);
      prover = make_prover(cfg, behaviour, *prover_ep);
      prover->start();
      while (!prover->finished()) prover->on_message(prover_ep->recv());
    } catch (...) {
      prover_error = std::current_exception();
    }
  });

  std::exception_ptr verifier_error;
  std::unique_ptr<TcpEndpoint> verifier_ep;
  std::unique_ptr<Verifier> verifier;
  try {
    verifier_ep = listener.accept(Direction::V_TO_P);
    verifier = make_verifier(cfg, *verifier_ep);
    verifier->start();
    while (!verifier->finished()) verifier->on_message(verifier_ep->recv());
  } catch (...) {
    verifier_error = std::current_exception();
    verifier_ep.reset();
  }
  prover_thread.join();
  if (verifier_error) std::rethrow_exception(verifier_error);
  if (prover_error) std::rethrow_exception(prover_error);
  return assemble(*verifier, *prover, verifier_ep->transcript());
}

RunRecord run_pt(const ScenarioConfig& c, const ProverBehaviour& b) { return run_checked(c, b, ProtocolId::PT); }
RunRecord run_kl(const ScenarioConfig& c, const ProverBehaviour& b) { return run_checked(c, b, ProtocolId::KL); }
RunRecord run_dkw(const ScenarioConfig& c, const ProverBehaviour& b) { return run_checked(c, b, ProtocolId::DKW); }
RunRecord run_kk(const ScenarioConfig& c, const ProverBehaviour& b) { return run_checked(c, b, ProtocolId::KK); }
RunRecord run_pose_r(const ScenarioConfig& c, const ProverBehaviour& b) { return run_checked(c, b, ProtocolId::POSE_R); }
RunRecord run_pose_g(const ScenarioConfig& c, const ProverBehaviour& b) { return run_checked(c, b, ProtocolId::POSE_G); }
RunRecord run_pose_l(const ScenarioConfig& c, const ProverBehaviour& b) { return run_checked(c, b, ProtocolId::POSE_L); }

}  // namespace erasure
