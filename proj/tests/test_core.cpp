#include <doctest.h>

#include <cmath>
#include <set>

#include "erasure/core.hpp"
#include "erasure/error.hpp"

using namespace erasure;

namespace {

ScenarioConfig base(ProtocolId p = ProtocolId::PT) {
  ScenarioConfig c;
  c.protocol = p;
  c.device = *find_device("cc2652");
  c.network = *find_network("stack-light");
  c.memory_bytes = 2048;
  return c;
}

std::string invalid_field(const ScenarioConfig& c) {
  try {
    validate(c);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidConfig) return "wrong code";
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("names round-trip") {
    for (auto p : kAllProtocols) CHECK(parse_protocol(to_string(p)) == p);
    for (auto h : kAllHashes) CHECK(parse_hash(to_string(h)) == h);
    CHECK_FALSE(parse_protocol("speed").has_value());
    CHECK_FALSE(parse_hash("md5").has_value());
  }

  TEST_CASE("hex round-trip and errors") {
    const Bytes b{0x00, 0x7f, 0xff, 0x10};
    CHECK(to_hex(b) == "007fff10");
    CHECK(from_hex("007FFF10") == b);
    CHECK_THROWS_AS(from_hex("abc"), Error);
    CHECK_THROWS_AS(from_hex("zz"), Error);
  }

  TEST_CASE("default profiles validate") {
    const auto p = default_profiles();
    CHECK(p.devices.size() == 3);
    CHECK(p.networks.size() == 2);
    for (const auto& d : p.devices) {
      for (const auto& n : p.networks) {
        ScenarioConfig c = base();
        c.device = d;
        c.network = n;
        c.memory_bytes = 2048;
        CHECK_NOTHROW(validate(c));
      }
    }
    CHECK(find_device("fr5994")->multiplier(HashId::AESHASH) > 1.0);
    CHECK(find_device("cc2652")->multiplier(HashId::SHA256) > 1.0);
    CHECK(find_device("f5529")->multiplier(HashId::SHA256) == 1.0);
    CHECK_FALSE(find_device("nrf52").has_value());
    CHECK(find_network("stack-heavy")->per_message_overhead_ns > find_network("stack-light")->per_message_overhead_ns);
  }

  TEST_CASE("validation names the offending field") {
    ScenarioConfig c = base();
    c.memory_bytes = 0;
    CHECK(invalid_field(c).find("memory_bytes") != std::string::npos);
    c.memory_bytes = 100;
    CHECK(invalid_field(c).find("memory_bytes") != std::string::npos);
    c.memory_bytes = 1 << 20;
    CHECK(invalid_field(c).find("memory_bytes") != std::string::npos);

    c = base(ProtocolId::POSE_R);
    c.rounds_r = 0;
    CHECK(invalid_field(c).find("rounds_r") != std::string::npos);
    c = base(ProtocolId::PT);
    c.rounds_r = 0;
    CHECK(invalid_field(c).empty());

    c = base(ProtocolId::DKW);
    c.challenge_count_c = 0;
    CHECK(invalid_field(c).find("challenge_count_c") != std::string::npos);

    c = base();
    c.network.bandwidth_bytes_per_s = 0;
    CHECK(invalid_field(c).find("bandwidth") != std::string::npos);
    c = base();
    c.device.hash_speed_multiplier[HashId::ASCON] = 0.5;
    CHECK(invalid_field(c).find("multiplier") != std::string::npos);
    c = base();
    c.device.compute_ns_per_hash_block = 0;
    CHECK(invalid_field(c).find("compute") != std::string::npos);
  }

  TEST_CASE("hash cost follows length, overhead and multiplier") {
    DeviceProfile d;
    d.compute_ns_per_hash_block = 6400;
    d.hash_call_overhead_ns = 1000;
    d.hash_speed_multiplier[HashId::SHA256] = 2.0;
    CHECK(hash_cost_ns(d, HashId::BLAKE2, 0) == 1000);
    CHECK(hash_cost_ns(d, HashId::BLAKE2, 64) == 7400);
    CHECK(hash_cost_ns(d, HashId::BLAKE2, 32) == 4200);
    CHECK(hash_cost_ns(d, HashId::SHA256, 64) == 3700);
  }

  TEST_CASE("security feature rows") {
    CHECK(security_features().size() == 7);
    CHECK(features_of(ProtocolId::KK).erasure_fraction == doctest::Approx(1.0 / 32));
    CHECK(features_of(ProtocolId::PT).erasure_fraction == 1.0);
    CHECK_FALSE(features_of(ProtocolId::POSE_R).erasure_fraction.has_value());
    CHECK(features_of(ProtocolId::DKW).time_complexity == TimeComplexity::QUADRATIC);
    CHECK(features_of(ProtocolId::POSE_L).time_complexity == TimeComplexity::LINEAR);
    CHECK(features_of(ProtocolId::KL).comm_complexity == CommComplexity::LINEAR);
    for (auto p : kAllProtocols) {
      CHECK(features_of(p).no_isolation == is_distance_bounded(p));
      CHECK((features_of(p).comm_complexity == CommComplexity::LINEAR) == streams_memory(p));
    }
  }

  TEST_CASE("rng is deterministic and domain separated") {
    Rng a(HashId::SHA256, 5, "verifier"), b(HashId::SHA256, 5, "verifier"), c(HashId::SHA256, 5, "prover"),
        d(HashId::SHA256, 6, "verifier");
    const Bytes x = a.bytes(100);
    CHECK(x == b.bytes(100));
    CHECK(x != c.bytes(100));
    CHECK(x != d.bytes(100));

    // Split reads see the same stream as one read.
    Rng e(HashId::BLAKE3, 1, "s"), f(HashId::BLAKE3, 1, "s");
    Bytes joined = e.bytes(7);
    append(joined, e.bytes(50));
    CHECK(joined == f.bytes(57));
  }

  TEST_CASE("rng stream is the keyed counter expansion") {
    Rng r(HashId::SHA256, 3, "dom");
    Bytes key;
    append_le64(key, 3);
    append(key, as_bytes("dom"));
    const Bytes expected = digest::expand(HashId::SHA256, key, 96);
    CHECK(r.bytes(96) == expected);
  }

  TEST_CASE("rng uniform stays in range and is roughly flat") {
    Rng r(HashId::BLAKE2, 9, "u");
    std::vector<int> counts(10, 0);
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const auto v = r.uniform(10);
      REQUIRE(v < 10);
      ++counts[v];
    }
    double chi2 = 0;
    for (int c : counts) chi2 += (c - n / 10.0) * (c - n / 10.0) / (n / 10.0);
    CHECK(chi2 < 27.9);  // 99.9th percentile, 9 degrees of freedom
    CHECK_THROWS_AS(r.uniform(0), Error);
    for (int i = 0; i < 1000; ++i) {
      const double u = r.unit();
      CHECK((u >= 0.0 && u < 1.0));
    }
  }

  TEST_CASE("scenario json round-trip and strictness") {
    ScenarioConfig c = base(ProtocolId::POSE_G);
    c.hash = HashId::ASCON;
    c.seed = 42;
    c.rounds_r = 12;
    const ScenarioConfig back = scenario_from_json(to_json(c));
    CHECK(back == c);

    const auto short_form = scenario_from_json(
        R"({"protocol":"kk","hash":"blake3","device":"f5529","network":"stack-heavy","memory_bytes":1024})");
    CHECK(short_form.protocol == ProtocolId::KK);
    CHECK(short_form.device == *find_device("f5529"));
    CHECK(short_form.rounds_r == kDefaultRounds);
    CHECK(short_form.seed == 0);

    CHECK_THROWS_AS(scenario_from_json(R"({"protocol":"kk","bogus":1})"), Error);
    CHECK_THROWS_AS(scenario_from_json("{not json"), Error);
    CHECK_THROWS_AS(scenario_from_json(R"({"protocol":"nope","hash":"sha256","device":"f5529","network":"stack-heavy","memory_bytes":1024})"),
                    Error);
  }
}
