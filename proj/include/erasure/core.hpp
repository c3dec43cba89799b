#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "erasure/digest.hpp"
#include "erasure/types.hpp"

namespace erasure {

/// Simulated prover hardware. Multipliers >= 1 model crypto accelerators and
/// divide the cost of every call to that hash function.
struct DeviceProfile {
  std::string name;
  std::uint64_t memory_bytes = 0;
  std::uint64_t compute_ns_per_hash_block = 0;
  /// Fixed cost of one hash invocation (init, padding, finalisation, call).
  std::uint64_t hash_call_overhead_ns = 0;
  std::map<HashId, double> hash_speed_multiplier;
  std::uint64_t copy_ns_per_byte = 0;

  double multiplier(HashId id) const;

  friend bool operator==(const DeviceProfile&, const DeviceProfile&) = default;
};

struct NetworkProfile {
  std::string name;
  std::uint64_t latency_ns = 0;
  std::uint64_t bandwidth_bytes_per_s = 1;
  std::uint64_t per_message_overhead_ns = 0;

  friend bool operator==(const NetworkProfile&, const NetworkProfile&) = default;
};

inline constexpr std::uint32_t kDefaultRounds = 71;
inline constexpr std::uint32_t kDefaultChallenges = 8;

struct ScenarioConfig {
  ProtocolId protocol = ProtocolId::PT;
  HashId hash = HashId::SHA256;
  DeviceProfile device;
  NetworkProfile network;
  std::uint64_t memory_bytes = 0;
  std::uint32_t rounds_r = kDefaultRounds;
  std::uint32_t challenge_count_c = kDefaultChallenges;
  std::uint64_t seed = 0;

  std::uint64_t blocks() const { return memory_bytes / kBlockBytes; }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

enum class TimeComplexity { LINEAR, QUASILINEAR, QUADRATIC };
enum class CommComplexity { CONSTANT_PLUS_ROUNDS, LINEAR };

std::string_view to_string(TimeComplexity t);
std::string_view to_string(CommComplexity c);

/// Static feature row per protocol. `erasure_fraction` is empty for the
/// distance-bounded protocols, whose fraction depends on the round count
/// (see security::guarantee_for).
struct SecurityFeatures {
  ProtocolId protocol;
  bool has_formal_proof;
  bool has_probability_bound;
  bool no_isolation;
  std::optional<double> erasure_fraction;
  TimeComplexity time_complexity;
  CommComplexity comm_complexity;
};

const std::vector<SecurityFeatures>& security_features();
const SecurityFeatures& features_of(ProtocolId id);

/// Calibration defaults: three devices and two channels.
struct DefaultProfiles {
  std::vector<DeviceProfile> devices;
  std::vector<NetworkProfile> networks;
};

DefaultProfiles default_profiles();
std::optional<DeviceProfile> find_device(std::string_view name);
std::optional<NetworkProfile> find_network(std::string_view name);

/// Zero-cost channel, used to isolate computational scaling.
NetworkProfile zero_network();

/// Returns `config` unchanged or throws Error{InvalidConfig} naming the field.
const ScenarioConfig& validate(const ScenarioConfig& config);

/// Virtual nanoseconds for one hash call on `len` input bytes.
std::uint64_t hash_cost_ns(const DeviceProfile& device, HashId hash, std::size_t len);

/// Deterministic byte stream: counter-mode expansion of the selected digest
/// keyed by (seed, domain label). Single owner.
class Rng {
 public:
  Rng(HashId hash, std::uint64_t seed, std::string_view domain = {});

  void fill(std::span<std::uint8_t> out);
  Bytes bytes(std::size_t n);
  std::uint64_t next_u64();
  /// Uniform integer in [0, bound), rejection sampled. bound > 0.
  std::uint64_t uniform(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

 private:
  void refill();

  HashId hash_;
  Bytes key_;
  std::uint64_t counter_ = 0;
  Digest256 block_{};
  std::size_t used_ = sizeof(block_.value);
};

// JSON (de)serialisation. Field names match the struct members; unknown
// fields are rejected with Error{ParseError}.
std::string to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(std::string_view text);

}  // namespace erasure
