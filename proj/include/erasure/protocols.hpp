#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erasure/channel.hpp"
#include "erasure/core.hpp"

namespace erasure {

struct ProverBehaviour {
  enum class Kind { HONEST, SKIP_FRACTION, TAMPER_ONE_BYTE, DISTANT };

  Kind kind = Kind::HONEST;
  /// SKIP_FRACTION: exactly floor(p * blocks) pseudorandom blocks are stored.
  double fraction = 1.0;
  /// DISTANT: added to every prover-to-verifier message.
  std::uint64_t extra_latency_ns = 0;

  static ProverBehaviour honest() { return {}; }
  static ProverBehaviour skip_fraction(double p);
  static ProverBehaviour tamper_one_byte() { return {Kind::TAMPER_ONE_BYTE, 1.0, 0}; }
  static ProverBehaviour distant(std::uint64_t extra_latency_ns) {
    return {Kind::DISTANT, 1.0, extra_latency_ns};
  }
};

struct RunRecord {
  bool accepted = false;
  std::uint64_t erasure_time_ns = 0;
  std::uint64_t verification_time_ns = 0;
  std::uint64_t total_time_ns = 0;
  Transcript transcript;
  std::uint64_t hash_calls_prover = 0;
  std::optional<std::string> reject_reason;

  /// Prover clock when its fill phase ended.
  std::uint64_t fill_end_ns = 0;
  std::vector<std::uint64_t> rtt_samples_ns;
  std::uint64_t unwritten_count = 0;
  bool memory_changed = false;
  /// Memory bytes the prover read back after the fill phase.
  std::uint64_t bytes_read_after_fill = 0;
};

struct RunOptions {
  /// When set, the prover memory is written to <prefix>.bin / .coverage.
  std::optional<std::string> memory_dump_prefix;
};

inline constexpr std::uint64_t kVerifierSpeedup = 100;
inline constexpr std::size_t kChunkBytes = 512;

/// Largest honest round trip the verifier tolerates in a timed round.
std::uint64_t rtt_bound_ns(const NetworkProfile& net);

/// Non-erasable state each prover keeps, in blocks; never above kMaxScratchBlocks.
std::size_t prover_scratch_blocks(ProtocolId id);

/// Validates `cfg` and runs it over the simulated channel.
RunRecord execute(const ScenarioConfig& cfg, const ProverBehaviour& behaviour = {},
                  const RunOptions& options = {});

/// Same parties over a loopback TCP connection, one thread each. Times are
/// wall-clock nanoseconds; compute charges do not apply.
RunRecord execute_over_tcp(const ScenarioConfig& cfg, const ProverBehaviour& behaviour = {});

RunRecord run_pt(const ScenarioConfig& cfg, const ProverBehaviour& behaviour = {});
RunRecord run_kl(const ScenarioConfig& cfg, const ProverBehaviour& behaviour = {});
RunRecord run_dkw(const ScenarioConfig& cfg, const ProverBehaviour& behaviour = {});
RunRecord run_kk(const ScenarioConfig& cfg, const ProverBehaviour& behaviour = {});
RunRecord run_pose_r(const ScenarioConfig& cfg, const ProverBehaviour& behaviour = {});
RunRecord run_pose_g(const ScenarioConfig& cfg, const ProverBehaviour& behaviour = {});
RunRecord run_pose_l(const ScenarioConfig& cfg, const ProverBehaviour& behaviour = {});

}  // namespace erasure
