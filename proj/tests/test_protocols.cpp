#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "erasure/error.hpp"
#include "erasure/protocols.hpp"
#include "erasure/security.hpp"

using namespace erasure;

namespace {

ScenarioConfig scenario(ProtocolId p, std::uint64_t mem = 2048, HashId h = HashId::SHA256,
                        const char* device = "cc2652", const char* network = "stack-light") {
  ScenarioConfig c;
  c.protocol = p;
  c.hash = h;
  c.device = *find_device(device);
  c.network = *find_network(network);
  c.memory_bytes = mem;
  return c;
}

std::size_t count_kind(const RunRecord& r, MessageKind k) {
  std::size_t n = 0;
  for (const auto& e : r.transcript.entries) n += e.message.kind == k;
  return n;
}

Bytes streamed_image(const RunRecord& r) {
  Bytes img;
  for (const auto& e : r.transcript.entries) {
    if (e.message.kind == MessageKind::DataChunk) append(img, e.message.payload);
  }
  return img;
}

const Bytes& payload_of(const RunRecord& r, MessageKind k) {
  for (const auto& e : r.transcript.entries) {
    if (e.message.kind == k) return e.message.payload;
  }
  FAIL("kind not in transcript");
  static Bytes none;
  return none;
}

// HMAC-SHA256 built from the bare compression-function digest.
Bytes hmac_sha256_oracle(ByteView key, ByteView msg) {
  Bytes ipad(64, 0x36), opad(64, 0x5c);
  for (std::size_t i = 0; i < key.size(); ++i) {
    ipad[i] ^= key[i];
    opad[i] ^= key[i];
  }
  append(ipad, msg);
  const auto inner = digest::sha256(ipad);
  append(opad, inner.view());
  const auto outer = digest::sha256(opad);
  return Bytes(outer.value.begin(), outer.value.end());
}

}  // namespace

TEST_SUITE("protocols") {
  TEST_CASE("honest runs are accepted and erase everything") {
    for (auto p : kAllProtocols) {
      for (auto h : kAllHashes) {
        for (std::uint64_t seed : {0u, 1u}) {
          ScenarioConfig c = scenario(p, 1024, h);
          c.seed = seed;
          c.rounds_r = 20;
          const RunRecord r = execute(c);
          INFO(to_string(p), " ", to_string(h));
          CHECK(r.accepted);
          CHECK_FALSE(r.reject_reason.has_value());
          CHECK(r.unwritten_count == 0);
          CHECK(r.memory_changed);
          CHECK(r.erasure_time_ns < r.total_time_ns);
          CHECK(r.erasure_time_ns <= r.fill_end_ns);
          CHECK(r.verification_time_ns == r.total_time_ns - r.fill_end_ns);
          CHECK(r.total_time_ns >= r.verification_time_ns);
        }
      }
    }
  }

  TEST_CASE("pt proof is the hmac of the stream keyed by its last block") {
    const RunRecord r = run_pt(scenario(ProtocolId::PT));
    CHECK(r.accepted);
    CHECK(r.transcript.bytes_v_to_p >= 2048);
    const Bytes img = streamed_image(r);
    REQUIRE(img.size() == 2048);
    const Bytes expected = hmac_sha256_oracle(ByteView(img).subspan(2048 - 32), ByteView(img).first(2048 - 32));
    CHECK(payload_of(r, MessageKind::Proof) == expected);
    CHECK(count_kind(r, MessageKind::DataChunk) == 4);
    CHECK(r.hash_calls_prover == 2);
  }

  TEST_CASE("pt detects one tampered byte") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      ScenarioConfig c = scenario(ProtocolId::PT);
      c.seed = seed;
      const RunRecord r = run_pt(c, ProverBehaviour::tamper_one_byte());
      CHECK_FALSE(r.accepted);
      CHECK(r.reject_reason == "proof-mismatch");
      const Bytes img = streamed_image(r);
      const Bytes honest = hmac_sha256_oracle(ByteView(img).subspan(2048 - 32), ByteView(img).first(2048 - 32));
      CHECK(payload_of(r, MessageKind::Proof) != honest);
    }
  }

  TEST_CASE("kl streams once and adds one message") {
    const RunRecord pt = run_pt(scenario(ProtocolId::PT));
    const RunRecord kl = run_kl(scenario(ProtocolId::KL));
    CHECK(kl.accepted);
    CHECK(kl.transcript.message_count == pt.transcript.message_count + 1);
    CHECK(count_kind(kl, MessageKind::FinalNonce) == 1);
    CHECK(kl.bytes_read_after_fill == 0);
    CHECK(pt.bytes_read_after_fill == 2048);
    CHECK(kl.hash_calls_prover == 4 + 1);  // one per chunk, then the final digest
  }

  TEST_CASE("kl proof follows the rolling digest") {
    const RunRecord r = run_kl(scenario(ProtocolId::KL, 1024, HashId::SHA256));
    const Bytes img = streamed_image(r);
    Bytes rolling(img.begin(), img.begin() + 32);
    for (std::size_t off = 0; off < img.size(); off += 512) {
      Bytes in = rolling;
      in.insert(in.end(), img.begin() + std::max<std::size_t>(off, 32), img.begin() + off + 512);
      const auto d = digest::sha256(in);
      rolling.assign(d.value.begin(), d.value.end());
    }
    append(rolling, payload_of(r, MessageKind::FinalNonce));
    const auto proof = digest::sha256(rolling);
    CHECK(payload_of(r, MessageKind::Proof) == Bytes(proof.value.begin(), proof.value.end()));
  }

  TEST_CASE("kl and pt reject partial storage") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      ScenarioConfig c = scenario(ProtocolId::KL);
      c.seed = seed;
      CHECK_FALSE(execute(c, ProverBehaviour::skip_fraction(0.5)).accepted);
      c.protocol = ProtocolId::PT;
      CHECK_FALSE(execute(c, ProverBehaviour::skip_fraction(0.5)).accepted);
    }
  }

  TEST_CASE("dkw counts and flow") {
    ScenarioConfig c = scenario(ProtocolId::DKW);
    c.challenge_count_c = 8;
    const RunRecord r = run_dkw(c);
    CHECK(r.accepted);
    CHECK(r.hash_calls_prover == 64 + 1);
    CHECK(payload_of(r, MessageKind::Challenge).size() == 8 * 8);
    CHECK(payload_of(r, MessageKind::Response).size() == 8 * 32);
    CHECK(r.transcript.bytes_v_to_p == 32 + 64 + 1);
    c.challenge_count_c = 0;
    CHECK_THROWS_AS(execute(c), Error);
  }

  TEST_CASE("kk counts and power-of-two requirement") {
    const RunRecord r = run_kk(scenario(ProtocolId::KK));
    CHECK(r.accepted);
    CHECK(r.hash_calls_prover == 64 * (6 + 1) + 1);
    try {
      run_kk(scenario(ProtocolId::KK, 60 * 32));
      FAIL("expected NotPowerOfTwo");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotPowerOfTwo);
    }
  }

  TEST_CASE("tampering is caught by the label challenges when hit") {
    std::size_t rejected = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      ScenarioConfig c = scenario(ProtocolId::DKW, 256);
      c.seed = seed;
      c.challenge_count_c = 64;
      const RunRecord r = run_dkw(c, ProverBehaviour::tamper_one_byte());
      if (!r.accepted) {
        ++rejected;
        CHECK(r.reject_reason == "challenge-mismatch");
      }
    }
    CHECK(rejected >= 15);  // 8 blocks, 64 challenges: a miss has probability (7/8)^64
  }

  TEST_CASE("pose-r timed rounds") {
    ScenarioConfig c = scenario(ProtocolId::POSE_R);
    c.rounds_r = 71;
    const RunRecord r = run_pose_r(c);
    CHECK(r.accepted);
    CHECK(count_kind(r, MessageKind::Challenge) + count_kind(r, MessageKind::Response) == 2 * 71);
    CHECK(r.rtt_samples_ns.size() == 71);
    for (auto rtt : r.rtt_samples_ns) CHECK(rtt <= rtt_bound_ns(c.network));
    CHECK(count_kind(r, MessageKind::Ready) == 1);
    CHECK(r.transcript.bytes_v_to_p >= 2048);
  }

  TEST_CASE("distant provers exceed the round-trip bound") {
    for (auto p : {ProtocolId::POSE_R, ProtocolId::POSE_G, ProtocolId::POSE_L}) {
      ScenarioConfig c = scenario(p);
      const std::uint64_t extra = rtt_bound_ns(c.network);
      const RunRecord r = execute(c, ProverBehaviour::distant(extra));
      CHECK_FALSE(r.accepted);
      CHECK(r.reject_reason == "rtt-exceeded");
      CHECK(r.rtt_samples_ns.size() == 1);
    }
  }

  TEST_CASE("bound is tight enough to catch half the honest round trip") {
    const auto net = *find_network("stack-light");
    const std::uint64_t honest = message_cost(net, 8) + message_cost(net, 32);
    CHECK(rtt_bound_ns(net) >= honest);
    CHECK(rtt_bound_ns(net) < honest + honest / 2 + 1);
    ScenarioConfig c = scenario(ProtocolId::POSE_L);
    CHECK(execute(c, ProverBehaviour::distant(honest / 2 - 1)).accepted);
    CHECK_FALSE(execute(c, ProverBehaviour::distant(honest / 2 + 2)).accepted);
  }

  TEST_CASE("pose-g and pose-l keep the downlink small") {
    for (auto p : {ProtocolId::POSE_G, ProtocolId::POSE_L}) {
      ScenarioConfig c = scenario(p, 8192);
      const RunRecord r = execute(c);
      CHECK(r.accepted);
      CHECK(r.rtt_samples_ns.size() == 71);
      CHECK(r.transcript.bytes_v_to_p == 32 + 8 * 71 + 1);
      CHECK(r.transcript.bytes_v_to_p < c.memory_bytes);
    }
  }

  TEST_CASE("pose-l counts and ordering") {
    const RunRecord r = run_pose_l(scenario(ProtocolId::POSE_L));
    CHECK(r.hash_calls_prover == 64 + 1);
    // Coverage is complete before the first challenge is sent.
    for (const auto& e : r.transcript.entries) {
      if (e.message.kind == MessageKind::Challenge) {
        CHECK(r.erasure_time_ns < e.recv_ns);
        break;
      }
    }
  }

  TEST_CASE("pose-r proof still guards the image") {
    std::size_t caught = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      ScenarioConfig c = scenario(ProtocolId::POSE_R);
      c.seed = seed;
      c.rounds_r = 3;
      const RunRecord r = run_pose_r(c, ProverBehaviour::tamper_one_byte());
      CHECK_FALSE(r.accepted);
      caught += r.reject_reason == "proof-mismatch";
    }
    CHECK(caught >= 8);
  }

  TEST_CASE("partial storage acceptance is near the analytic rate") {
    struct Case {
      ProtocolId p;
      std::uint64_t mem;
      double frac;
      std::uint32_t k;
    };
    for (const auto& cs : {Case{ProtocolId::DKW, 256, 0.5, 2}, Case{ProtocolId::KK, 1024, 31.0 / 32, 3},
                           Case{ProtocolId::POSE_L, 320, 0.9, 5}, Case{ProtocolId::POSE_G, 1024, 0.75, 4},
                           Case{ProtocolId::POSE_R, 320, 0.9, 5}}) {
      ScenarioConfig c = scenario(cs.p, cs.mem, HashId::BLAKE2);
      c.challenge_count_c = cs.k;
      c.rounds_r = cs.k;
      const std::uint64_t trials = 4000;
      const auto mc = security::monte_carlo_acceptance(c, ProverBehaviour::skip_fraction(cs.frac), trials, 4);
      const double q = std::pow(cs.frac, cs.k);
      INFO(to_string(cs.p), " rate=", mc.rate, " analytic=", q);
      CHECK(std::abs(mc.rate - q) <= 3 * security::binomial_std_error(q, trials));
    }
  }

  TEST_CASE("partial storage leaves memory uncovered") {
    const RunRecord r = execute(scenario(ProtocolId::POSE_L, 320), ProverBehaviour::skip_fraction(0.9));
    CHECK(r.unwritten_count == 32);
    CHECK(r.erasure_time_ns == r.fill_end_ns);
    CHECK_THROWS_AS(ProverBehaviour::skip_fraction(1.5), Error);
  }

  TEST_CASE("runs are deterministic per seed") {
    for (auto p : kAllProtocols) {
      ScenarioConfig c = scenario(p, 1024);
      c.seed = 11;
      const RunRecord a = execute(c), b = execute(c);
      CHECK(a.transcript == b.transcript);
      CHECK(a.total_time_ns == b.total_time_ns);
      c.seed = 12;
      CHECK_FALSE(execute(c).transcript == a.transcript);
    }
  }

  TEST_CASE("message overhead costs pose-r on heavy stacks") {
    const RunRecord light = execute(scenario(ProtocolId::POSE_R, 2048, HashId::SHA256, "cc2652", "stack-light"));
    const RunRecord heavy = execute(scenario(ProtocolId::POSE_R, 2048, HashId::SHA256, "cc2652", "stack-heavy"));
    CHECK(heavy.total_time_ns > light.total_time_ns);
  }

  TEST_CASE("engines refuse a different protocol") {
    CHECK_THROWS_AS(run_kl(scenario(ProtocolId::PT)), Error);
    ScenarioConfig c = scenario(ProtocolId::PT);
    c.memory_bytes = 0;
    try {
      execute(c);
      FAIL("expected InvalidConfig");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidConfig);
    }
  }

  TEST_CASE("memory dump option") {
    RunOptions o;
    o.memory_dump_prefix = "protocol_dump_test";
    execute(scenario(ProtocolId::POSE_L, 256), {}, o);
    std::FILE* f = std::fopen("protocol_dump_test.bin", "rb");
    REQUIRE(f != nullptr);
    std::fseek(f, 0, SEEK_END);
    CHECK(std::ftell(f) == 256);
    std::fclose(f);
    std::remove("protocol_dump_test.bin");
    std::remove("protocol_dump_test.coverage");
  }

  TEST_CASE("same parties over tcp") {
    for (auto p : kAllProtocols) {
      ScenarioConfig c = scenario(p, 512);
      c.rounds_r = 5;
      const RunRecord r = execute_over_tcp(c);
      const RunRecord sim = execute(c);
      INFO(to_string(p));
      CHECK(r.accepted);
      CHECK(r.transcript.message_count == sim.transcript.message_count);
      CHECK(r.transcript.bytes_v_to_p == sim.transcript.bytes_v_to_p);
    }
    CHECK_FALSE(execute_over_tcp(scenario(ProtocolId::PT, 512), ProverBehaviour::tamper_one_byte()).accepted);
  }
}
