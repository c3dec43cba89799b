#include "erasure/core.hpp"

#include <cmath>
#include <cstring>

#include "erasure/error.hpp"

namespace erasure {

double DeviceProfile::multiplier(HashId id) const {
  const auto it = hash_speed_multiplier.find(id);
  return it == hash_speed_multiplier.end() ? 1.0 : it->second;
}

std::string_view to_string(TimeComplexity t) {
  switch (t) {
    case TimeComplexity::LINEAR: return "linear";
    case TimeComplexity::QUASILINEAR: return "quasilinear";
    case TimeComplexity::QUADRATIC: return "quadratic";
  }
  return "?";
}

std::string_view to_string(CommComplexity c) {
  switch (c) {
    case CommComplexity::CONSTANT_PLUS_ROUNDS: return "constant+rounds";
    case CommComplexity::LINEAR: return "linear";
  }
  return "?";
}

const std::vector<SecurityFeatures>& security_features() {
  using TC = TimeComplexity;
  using CC = CommComplexity;
  static const std::vector<SecurityFeatures> kTable = {
      {ProtocolId::PT, false, false, false, 1.0, TC::LINEAR, CC::LINEAR},
      {ProtocolId::KL, false, false, false, 1.0, TC::LINEAR, CC::LINEAR},
      {ProtocolId::DKW, true, false, false, 1.0, TC::QUADRATIC, CC::CONSTANT_PLUS_ROUNDS},
      {ProtocolId::KK, true, false, false, 1.0 / 32.0, TC::QUASILINEAR, CC::CONSTANT_PLUS_ROUNDS},
      {ProtocolId::POSE_R, true, true, true, std::nullopt, TC::LINEAR, CC::LINEAR},
      {ProtocolId::POSE_G, true, true, true, std::nullopt, TC::QUASILINEAR,
       CC::CONSTANT_PLUS_ROUNDS},
      {ProtocolId::POSE_L, true, true, true, std::nullopt, TC::LINEAR, CC::CONSTANT_PLUS_ROUNDS},
  };
  return kTable;
}

const SecurityFeatures& features_of(ProtocolId id) {
  for (const auto& row : security_features()) {
    if (row.protocol == id) return row;
  }
  throw Error(ErrorCode::InvalidConfig, "no feature row for protocol");
}

// Calibration values. Absolute numbers are not claims about real hardware;
// they are chosen so the simulated orderings match the observed ones:
// cc2652 computes 3x faster than the MSP430 parts, stack-heavy pays a large
// fixed cost per message, stack-light is cheap per message.
DefaultProfiles default_profiles() {
  DefaultProfiles p;
  p.devices.push_back(DeviceProfile{
      .name = "f5529",
      .memory_bytes = 4096,
      .compute_ns_per_hash_block = 1'200'000,
      .hash_call_overhead_ns = 2'400'000,
      .hash_speed_multiplier = {},
      .copy_ns_per_byte = 37'500,
  });
  p.devices.push_back(DeviceProfile{
      .name = "fr5994",
      .memory_bytes = 4096,
      .compute_ns_per_hash_block = 1'200'000,
      .hash_call_overhead_ns = 2'400'000,
      .hash_speed_multiplier = {{HashId::AESHASH, 2.0}},
      .copy_ns_per_byte = 37'500,
  });
  p.devices.push_back(DeviceProfile{
      .name = "cc2652",
      .memory_bytes = 8192,
      .compute_ns_per_hash_block = 400'000,
      .hash_call_overhead_ns = 800'000,
      .hash_speed_multiplier = {{HashId::SHA256, 2.0}, {HashId::AESHASH, 1.5}},
      .copy_ns_per_byte = 12'500,
  });
  p.networks.push_back(NetworkProfile{
      .name = "stack-heavy",
      .latency_ns = 5'000'000,
      .bandwidth_bytes_per_s = 2'000,
      .per_message_overhead_ns = 300'000'000,
  });
  p.networks.push_back(NetworkProfile{
      .name = "stack-light",
      .latency_ns = 200'000,
      .bandwidth_bytes_per_s = 50'000,
      .per_message_overhead_ns = 500'000,
  });
  return p;
}

std::optional<DeviceProfile> find_device(std::string_view name) {
  for (auto& d : default_profiles().devices) {
    if (d.name == name) return d;
  }
  return std::nullopt;
}

std::optional<NetworkProfile> find_network(std::string_view name) {
  if (name == "zero") return zero_network();
  for (auto& n : default_profiles().networks) {
    if (n.name == name) return n;
  }
  return std::nullopt;
}

NetworkProfile zero_network() {
  return NetworkProfile{.name = "zero", .latency_ns = 0, .bandwidth_bytes_per_s = 1'000'000'000'000ULL,
                        .per_message_overhead_ns = 0};
}

namespace {

[[noreturn]] void invalid(std::string_view field, std::string_view why) {
  throw Error(ErrorCode::InvalidConfig,
              "InvalidConfig(" + std::string(field) + "): " + std::string(why));
}

}  // namespace

const ScenarioConfig& validate(const ScenarioConfig& config) {
  const DeviceProfile& dev = config.device;
  if (dev.memory_bytes == 0 || dev.memory_bytes % kBlockBytes != 0) {
    invalid("device.memory_bytes", "must be a positive multiple of 32");
  }
  if (dev.compute_ns_per_hash_block == 0) {
    invalid("device.compute_ns_per_hash_block", "must be positive");
  }
  for (const auto& [id, m] : dev.hash_speed_multiplier) {
    if (!(m >= 1.0) || !std::isfinite(m)) {
      invalid("device.hash_speed_multiplier", "multipliers must be finite and >= 1");
    }
  }
  if (config.network.bandwidth_bytes_per_s == 0) {
    invalid("network.bandwidth_bytes_per_s", "must be positive");
  }
  if (config.memory_bytes == 0 || config.memory_bytes % kBlockBytes != 0) {
    invalid("memory_bytes", "must be a positive multiple of 32");
  }
  if (config.memory_bytes > dev.memory_bytes) {
    invalid("memory_bytes", "exceeds device memory");
  }
  if (is_distance_bounded(config.protocol) && config.rounds_r == 0) {
    invalid("rounds_r", "must be >= 1 for distance-bounded protocols");
  }
  const bool needs_challenges = config.protocol == ProtocolId::DKW ||
                                config.protocol == ProtocolId::KK ||
                                config.protocol == ProtocolId::POSE_G ||
                                config.protocol == ProtocolId::POSE_L;
  if (needs_challenges && config.challenge_count_c == 0) {
    invalid("challenge_count_c", "must be >= 1");
  }
  return config;
}

std::uint64_t hash_cost_ns(const DeviceProfile& device, HashId hash, std::size_t len) {
  const double block_ns = static_cast<double>(device.compute_ns_per_hash_block) *
                          static_cast<double>(len) / 64.0;
  const double total = (block_ns + static_cast<double>(device.hash_call_overhead_ns)) /
                       device.multiplier(hash);
  return static_cast<std::uint64_t>(std::llround(total));
}

Rng::Rng(HashId hash, std::uint64_t seed, std::string_view domain) : hash_(hash) {
  append_le64(key_, seed);
  append(key_, as_bytes(domain));
  key_.resize(key_.size() + 8);
}

void Rng::refill() {
  const std::size_t at = key_.size() - 8;
  for (int i = 0; i < 8; ++i) key_[at + i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  ++counter_;
  block_ = digest::hash(hash_, key_);
  used_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  std::size_t off = 0;
  while (off < out.size()) {
    if (used_ == block_.value.size()) refill();
    const std::size_t take = std::min(out.size() - off, block_.value.size() - used_);
    std::memcpy(out.data() + off, block_.value.data() + used_, take);
    used_ += take;
    off += take;
  }
}

Bytes Rng::bytes(std::size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  return load_le64(b.data());
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::OutOfRange, "uniform bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  while (true) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Rng::unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

}  // namespace erasure
