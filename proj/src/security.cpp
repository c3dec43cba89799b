#include "erasure/security.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

#include "erasure/error.hpp"

namespace erasure::security {

double acceptance_probability(double f, std::uint64_t k) {
  if (!(f >= 0.0 && f <= 1.0)) throw Error(ErrorCode::OutOfRange, "fraction must be in [0, 1]");
  return std::pow(f, static_cast<double>(k));
}

std::uint64_t min_rounds(double f, double eps) {
  if (f <= 0.0 || f >= 1.0 || std::isnan(f)) {
    throw Error(ErrorCode::DegenerateFraction, "fraction must be strictly between 0 and 1");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::OutOfRange, "eps must be strictly between 0 and 1");
  auto k = static_cast<std::uint64_t>(std::ceil(std::log(eps) / std::log(f)));
  // The logarithm ratio can land one ulp off an integer.
  while (acceptance_probability(f, k) > eps) ++k;
  while (k > 1 && acceptance_probability(f, k - 1) <= eps) --k;
  return k;
}

double binomial_std_error(double q, std::uint64_t trials) {
  return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

MonteCarloResult monte_carlo_acceptance(const ScenarioConfig& cfg, const ProverBehaviour& behaviour,
                                        std::uint64_t trials, unsigned jobs) {
  if (trials == 0) throw Error(ErrorCode::InvalidConfig, "InvalidConfig(trials): must be at least 1");
  validate(cfg);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(trials, 256))));

  std::atomic<std::uint64_t> accepted{0};
  std::vector<std::exception_ptr> errors(jobs);
  auto worker = [&](unsigned w) {
    try {
      ScenarioConfig c = cfg;
      std::uint64_t local = 0;
      for (std::uint64_t i = w; i < trials; i += jobs) {
        c.seed = cfg.seed + i;
        if (execute(c, behaviour).accepted) ++local;
      }
      accepted += local;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  MonteCarloResult r;
  r.trials = trials;
  r.accepted = accepted.load();
  r.rate = static_cast<double>(r.accepted) / static_cast<double>(trials);
  r.std_error = binomial_std_error(r.rate, trials);
  return r;
}

ErasureGuarantee guarantee_for(ProtocolId protocol, std::uint32_t rounds, double eps) {
  ErasureGuarantee g;
  g.failure_eps = eps;
  g.rounds_r = rounds;
  if (is_distance_bounded(protocol)) {
    if (rounds < 1) throw Error(ErrorCode::InvalidConfig, "InvalidConfig(rounds_r): must be at least 1");
    g.fraction_f = std::exp(std::log(eps) / rounds);
    return g;
  }
  g.fixed_fraction = true;
  g.assumes_isolation = !features_of(protocol).no_isolation;
  g.fraction_f = features_of(protocol).erasure_fraction.value_or(1.0);
  return g;
}

}  // namespace erasure::security
