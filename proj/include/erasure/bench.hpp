#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "erasure/core.hpp"

namespace erasure::bench {

inline constexpr std::uint32_t kDefaultRepetitions = 5;

inline constexpr std::string_view kCsvHeader =
    "protocol,hash,device,network,memory_bytes,rounds_r,challenges_c,seed,accepted,erasure_time_ns,"
    "verification_time_ns,total_time_ns,bytes_v_to_p,bytes_p_to_v,messages,hash_calls_prover";

/// Integer aggregate over repetitions. The mean is sum / count exactly:
/// mean_floor() plus mean_remainder() / count.
struct Aggregate {
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  std::uint64_t sum = 0;
  std::uint64_t count = 0;

  void add(std::uint64_t v);
  std::uint64_t mean_floor() const { return count ? sum / count : 0; }
  std::uint64_t mean_remainder() const { return count ? sum % count : 0; }
  double mean() const { return count ? static_cast<double>(sum) / static_cast<double>(count) : 0.0; }
};

struct BenchResult {
  ScenarioConfig scenario;
  std::uint32_t repetitions = 0;
  std::uint32_t accepted_count = 0;
  Aggregate erasure_time_ns;
  Aggregate verification_time_ns;
  Aggregate total_time_ns;
  Aggregate bytes_v_to_p;
  Aggregate bytes_p_to_v;
  Aggregate messages;
  Aggregate hash_calls_prover;
  /// Set when the scenario failed; the other fields are then empty.
  std::optional<std::string> error;

  bool all_accepted() const { return !error && accepted_count == repetitions; }
};

struct BenchMatrix {
  std::vector<ScenarioConfig> scenarios;
  std::uint32_t repetitions = kDefaultRepetitions;
};

/// Explicit `scenarios` first, then the `grid` cross product in the order
/// protocols, hashes, devices, networks, memory_bytes (last varies fastest).
/// Scenarios without a seed take `base_seed`.
BenchMatrix matrix_from_json(std::string_view text, std::uint64_t base_seed = 0);

/// Runs every scenario `repetitions` times with seeds seed + rep. Results
/// follow input order whatever `jobs` is.
std::vector<BenchResult> run_matrix(const BenchMatrix& matrix, unsigned jobs = 1);

/// One row per result; aggregated columns hold the floored mean.
void write_csv(const std::vector<BenchResult>& results, std::ostream& out);
void write_json(const std::vector<BenchResult>& results, std::ostream& out);

/// Log-log least-squares slope of mean total time against memory size.
/// Throws InsufficientPoints with fewer than three distinct sizes.
double scaling_fit(const std::vector<BenchResult>& results, ProtocolId protocol);

/// Hash with the smallest mean total time; ties go to the earlier HashId.
/// Throws NoData when nothing matches.
HashId best_hash_per(const std::vector<BenchResult>& results, ProtocolId protocol, std::string_view device);

}  // namespace erasure::bench
