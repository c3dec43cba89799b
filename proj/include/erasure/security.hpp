#pragma once

#include <cstdint>

#include "erasure/protocols.hpp"

namespace erasure::security {

inline constexpr double kDefaultEps = 1e-3;

/// Memory fraction a protocol provably erases, with the adversary's residual
/// acceptance probability.
struct ErasureGuarantee {
  double fraction_f = 1.0;
  double failure_eps = kDefaultEps;
  std::uint32_t rounds_r = 0;
  /// True for the fixed rows that hold only if nobody helps the prover.
  bool assumes_isolation = false;
  /// True when the fraction does not depend on the round count.
  bool fixed_fraction = false;
};

/// f^k: all k uniform challenges land in the correctly stored fraction.
double acceptance_probability(double f, std::uint64_t k);

/// Smallest k with f^k <= eps. Throws DegenerateFraction for f in {0, 1}.
std::uint64_t min_rounds(double f, double eps = kDefaultEps);

struct MonteCarloResult {
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  double rate = 0.0;
  /// Binomial standard error sqrt(rate (1 - rate) / trials).
  double std_error = 0.0;
};

/// Runs `execute` `trials` times with seeds cfg.seed, cfg.seed + 1, ...
/// spread over `jobs` threads; the count does not depend on `jobs`.
MonteCarloResult monte_carlo_acceptance(const ScenarioConfig& cfg, const ProverBehaviour& behaviour,
                                        std::uint64_t trials, unsigned jobs = 1);

/// Analytic standard error for a true rate q.
double binomial_std_error(double q, std::uint64_t trials);

ErasureGuarantee guarantee_for(ProtocolId protocol, std::uint32_t rounds, double eps = kDefaultEps);

}  // namespace erasure::security
