#include "erasure/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "erasure/analysis.hpp"
#include "erasure/bench.hpp"
#include "erasure/digest.hpp"
#include "erasure/error.hpp"
#include "erasure/protocols.hpp"
#include "erasure/security.hpp"
#include "json_io.hpp"

namespace erasure {
namespace {

using json_io::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInternal = 2;

bool is_validation(ErrorCode c) {
  return c != ErrorCode::ChannelClosed && c != ErrorCode::ProtocolDesync;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

struct ScenarioFlags {
  std::string protocol = "pt";
  std::string hash = "sha256";
  std::string device = "cc2652";
  std::string network = "stack-light";
  std::uint64_t memory = 2048;
  std::uint32_t rounds = kDefaultRounds;
  std::uint32_t challenges = kDefaultChallenges;

  void add_to(CLI::App& app) {
    std::vector<std::string> protocols, hashes;
    for (auto p : kAllProtocols) protocols.emplace_back(to_string(p));
    for (auto h : kAllHashes) hashes.emplace_back(to_string(h));
    app.add_option("--protocol", protocol, "Protocol")->check(CLI::IsMember(protocols))->capture_default_str();
    app.add_option("--hash", hash, "Hash function")->check(CLI::IsMember(hashes))->capture_default_str();
    app.add_option("--device", device, "Device profile (f5529, fr5994, cc2652)")->capture_default_str();
    app.add_option("--network", network, "Network profile (stack-heavy, stack-light, zero)")->capture_default_str();
    app.add_option("--memory", memory, "Erasable memory in bytes")->capture_default_str();
    app.add_option("--rounds", rounds, "Timed rounds r (distance-bounded protocols)")->capture_default_str();
    app.add_option("--challenges", challenges, "Challenge count c (dkw, kk)")->capture_default_str();
  }

  ScenarioConfig build(std::uint64_t seed) const {
    ScenarioConfig c;
    c.protocol = *parse_protocol(protocol);
    c.hash = *parse_hash(hash);
    auto d = find_device(device);
    if (!d) throw Error(ErrorCode::InvalidConfig, "InvalidConfig(device): unknown profile '" + device + "'");
    auto n = find_network(network);
    if (!n) throw Error(ErrorCode::InvalidConfig, "InvalidConfig(network): unknown profile '" + network + "'");
    c.device = *d;
    c.network = *n;
    c.memory_bytes = memory;
    c.rounds_r = rounds;
    c.challenge_count_c = challenges;
    c.seed = seed;
    return c;
  }
};

bench::BenchResult single_result(const ScenarioConfig& c, const RunRecord& r) {
  bench::BenchResult b;
  b.scenario = c;
  b.repetitions = 1;
  b.accepted_count = r.accepted ? 1 : 0;
  b.erasure_time_ns.add(r.erasure_time_ns);
  b.verification_time_ns.add(r.verification_time_ns);
  b.total_time_ns.add(r.total_time_ns);
  b.bytes_v_to_p.add(r.transcript.bytes_v_to_p);
  b.bytes_p_to_v.add(r.transcript.bytes_p_to_v);
  b.messages.add(r.transcript.message_count);
  b.hash_calls_prover.add(r.hash_calls_prover);
  return b;
}

json record_json(const ScenarioConfig& c, const RunRecord& r) {
  json j = {{"scenario", json_io::scenario_to_json(c)},
            {"accepted", r.accepted},
            {"reject_reason", r.reject_reason ? json(*r.reject_reason) : json(nullptr)},
            {"erasure_time_ns", r.erasure_time_ns},
            {"verification_time_ns", r.verification_time_ns},
            {"total_time_ns", r.total_time_ns},
            {"total_time_s", fixed(static_cast<double>(r.total_time_ns) / 1e9, 6)},
            {"bytes_v_to_p", r.transcript.bytes_v_to_p},
            {"bytes_p_to_v", r.transcript.bytes_p_to_v},
            {"messages", r.transcript.message_count},
            {"hash_calls_prover", r.hash_calls_prover},
            {"rtt_samples", r.rtt_samples_ns.size()},
            {"unwritten_bytes", r.unwritten_count}};
  return j;
}

ProverBehaviour behaviour_from(const std::string& name, double fraction, std::uint64_t extra) {
  if (name == "honest") return ProverBehaviour::honest();
  if (name == "skip") return ProverBehaviour::skip_fraction(fraction);
  if (name == "tamper") return ProverBehaviour::tamper_one_byte();
  if (name == "distant") return ProverBehaviour::distant(extra);
  throw Error(ErrorCode::InvalidConfig, "InvalidConfig(behaviour): unknown '" + name + "'");
}

/// Quick pass over the core invariants; one line per check.
bool selftest(std::ostream& out) {
  bool all = true;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    all = all && ok;
  };

  const std::pair<HashId, const char*> abc[] = {
      {HashId::SHA256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"},
      {HashId::BLAKE2, "508c5e8c327c14e2e1a72ba34eeb452f37458b209ed63a294d999b4c86675982"},
      {HashId::BLAKE3, "6437b3ac38465133ffb63b75273a8db548c558465d79db03fd359c6cd5bd9d85"},
      {HashId::ASCON, "45aa03431c3c829b3b066f33e844b0cc4d20a45af92d3dcfdf34f40fc20935cf"},
      {HashId::AESHASH, "f95dcca68af720817355f6d1aefa478aef15f2bff8a216c7577c401d23ff5595"},
  };
  for (const auto& [id, hex] : abc) {
    check("digest " + std::string(to_string(id)), digest::hash(id, as_bytes("abc")).hex() == hex);
  }

  bool complete = true;
  for (auto p : kAllProtocols) {
    for (auto h : kAllHashes) {
      ScenarioConfig c;
      c.protocol = p;
      c.hash = h;
      c.device = *find_device("cc2652");
      c.network = *find_network("stack-light");
      c.memory_bytes = 1024;
      const RunRecord r = execute(c);
      complete = complete && r.accepted && r.unwritten_count == 0 && r.memory_changed;
    }
  }
  check("honest runs accepted with full coverage", complete);

  check("min_rounds(0.9, 1e-3) = 66", security::min_rounds(0.9, 1e-3) == 66);
  check("min_rounds(1/32, 1e-3) = 2", security::min_rounds(1.0 / 32, 1e-3) == 2);
  check("min_rounds(0.99, 1e-3) = 688", security::min_rounds(0.99, 1e-3) == 688);

  const std::vector<double> v = {1.9, 1.3, 8.7, 7.2, 23.3, 23.2, 29.7};
  const auto km = analysis::kmeans_1d(v, 3);
  check("kmeans fixture", km.assignment == std::vector<std::size_t>{0, 0, 1, 1, 2, 2, 2});

  ScenarioConfig t;
  t.protocol = ProtocolId::PT;
  t.device = *find_device("cc2652");
  t.network = *find_network("stack-light");
  t.memory_bytes = 1024;
  check("tampering detected", !execute(t, ProverBehaviour::tamper_one_byte()).accepted);
  return all;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof-of-secure-erasure protocol simulator and benchmark"};
  app.name("erasebench");
  app.require_subcommand(1, 1);

  std::string format = "csv";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--seed", seed, "Base seed; all randomness derives from it")->capture_default_str();
  };

  // run
  auto* run = app.add_subcommand("run", "Run one scenario");
  ScenarioFlags run_flags;
  run_flags.add_to(*run);
  std::string config_path, behaviour = "honest", transcript_path, dump_prefix;
  double run_fraction = 1.0;
  std::uint64_t extra_latency = 0;
  bool over_tcp = false;
  run->add_option("--config", config_path, "Scenario JSON file; replaces the scenario flags");
  run->add_option("--behaviour", behaviour, "Prover behaviour")
      ->check(CLI::IsMember({"honest", "skip", "tamper", "distant"}))
      ->capture_default_str();
  run->add_option("--fraction", run_fraction, "Stored fraction for --behaviour skip")->capture_default_str();
  run->add_option("--extra-latency-ns", extra_latency, "Added uplink latency for --behaviour distant");
  run->add_option("--transcript", transcript_path, "Write the transcript as JSON lines");
  run->add_option("--dump-memory", dump_prefix, "Write prover memory to <prefix>.bin and <prefix>.coverage");
  run->add_flag("--tcp", over_tcp, "Use a loopback TCP connection (wall-clock times)");
  add_common(run);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a scenario matrix");
  std::string matrix_path;
  std::uint32_t repetitions = 0;
  bench_cmd->add_option("--matrix", matrix_path, "Matrix JSON file")->required();
  bench_cmd->add_option("--repetitions", repetitions, "Override the matrix repetition count");
  bench_cmd->add_option("--jobs", jobs, "Parallel scenarios")->capture_default_str();
  add_common(bench_cmd);

  // rounds
  auto* rounds = app.add_subcommand("rounds", "Round count for an erasure fraction and failure bound");
  double fraction = 0.9, eps = security::kDefaultEps;
  std::uint32_t configured = kDefaultRounds;
  rounds->add_option("--fraction", fraction, "Fraction of memory to guarantee")->capture_default_str();
  rounds->add_option("--eps", eps, "Acceptance bound for a cheating prover")->capture_default_str();
  rounds->add_option("--rounds", configured, "Round count to check against the bound")->capture_default_str();
  add_common(rounds);

  // recommend
  auto* rec = app.add_subcommand("recommend", "Protocol for a use case");
  std::string net_cost = "high", mem_size = "small", sec_level = "high";
  bool distant = false, accel = false, fast = false;
  rec->add_option("--network", net_cost, "Network cost")->check(CLI::IsMember({"high", "low"}))->capture_default_str();
  rec->add_option("--memory", mem_size, "Memory size")->check(CLI::IsMember({"small", "large"}))->capture_default_str();
  rec->add_option("--security", sec_level, "Security level")->check(CLI::IsMember({"high", "low"}))->capture_default_str();
  rec->add_flag("--distant", distant, "Distant attackers must be resisted");
  rec->add_flag("--accelerator", accel, "Device has a hash accelerator");
  rec->add_flag("--fast-device", fast, "Device clock is fast");
  add_common(rec);

  // soundness
  auto* sound = app.add_subcommand("soundness", "Monte Carlo acceptance of a partial-storage prover");
  ScenarioFlags sound_flags;
  sound_flags.protocol = "pose-r";
  sound_flags.memory = 1280;
  sound_flags.add_to(*sound);
  double stored = 0.9;
  std::uint64_t trials = 10000;
  sound->add_option("--fraction", stored, "Fraction of blocks the prover stores")->capture_default_str();
  sound->add_option("--trials", trials, "Trials")->capture_default_str();
  sound->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  add_common(sound);

  auto* self = app.add_subcommand("selftest", "Quick invariant pass");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (run->parsed()) {
      ScenarioConfig c = config_path.empty() ? run_flags.build(seed) : scenario_from_json(read_file(config_path));
      if (!config_path.empty() && run->count("--seed")) c.seed = seed;
      const ProverBehaviour b = behaviour_from(behaviour, run_fraction, extra_latency);
      RunOptions opts;
      if (!dump_prefix.empty()) opts.memory_dump_prefix = dump_prefix;
      const RunRecord r = over_tcp ? execute_over_tcp(c, b) : execute(c, b, opts);
      if (!transcript_path.empty()) {
        std::ofstream t(transcript_path);
        if (!t) throw Error(ErrorCode::IoError, "cannot write " + transcript_path);
        dump_transcript(r.transcript, t);
      }
      if (format == "json") {
        out << record_json(c, r).dump(2) << '\n';
      } else {
        bench::write_csv({single_result(c, r)}, out);
      }
      if (r.reject_reason) err << "rejected: " << *r.reject_reason << '\n';
    } else if (bench_cmd->parsed()) {
      auto m = bench::matrix_from_json(read_file(matrix_path), seed);
      if (repetitions > 0) m.repetitions = repetitions;
      const auto results = bench::run_matrix(m, jobs);
      for (const auto& r : results) {
        if (r.error) err << "scenario failed: " << *r.error << '\n';
      }
      if (format == "json") {
        bench::write_json(results, out);
      } else {
        bench::write_csv(results, out);
      }
    } else if (rounds->parsed()) {
      const auto k = security::min_rounds(fraction, eps);
      const double q = security::acceptance_probability(fraction, configured);
      const bool ok = configured >= k;
      if (format == "json") {
        out << json{{"fraction", fraction},
                    {"eps", eps},
                    {"min_rounds", k},
                    {"configured_rounds", configured},
                    {"configured_acceptance", q},
                    {"configured_satisfies", ok}}
                   .dump(2)
            << '\n';
      } else {
        out << "fraction,eps,min_rounds,configured_rounds,configured_acceptance,configured_satisfies\n"
            << fraction << ',' << eps << ',' << k << ',' << configured << ',' << sci(q) << ','
            << (ok ? "true" : "false") << '\n';
      }
      err << "model minimum is " << k << " rounds; r = " << configured
          << (ok ? " meets" : " does not meet") << " the bound\n";
    } else if (rec->parsed()) {
      analysis::UseCase u;
      u.network_cost = net_cost == "high" ? analysis::Level::HIGH : analysis::Level::LOW;
      u.memory_size = mem_size == "small" ? analysis::MemorySize::SMALL : analysis::MemorySize::LARGE;
      u.security_level = sec_level == "high" ? analysis::Level::HIGH : analysis::Level::LOW;
      u.distant_attacker_resistance_required = distant;
      u.has_hw_accelerator = accel;
      u.fast_device = fast;
      const auto r = analysis::recommend(u);
      if (format == "json") {
        out << json{{"protocol", std::string(to_string(r.protocol))},
                    {"extrapolated", r.extrapolated},
                    {"justification", r.justification}}
                   .dump(2)
            << '\n';
      } else {
        out << to_string(r.protocol) << '\n';
        err << (r.extrapolated ? "extrapolated: " : "row: ") << r.justification << '\n';
      }
    } else if (sound->parsed()) {
      const ScenarioConfig c = sound_flags.build(seed);
      const auto mc = security::monte_carlo_acceptance(c, ProverBehaviour::skip_fraction(stored), trials, jobs);
      const std::uint64_t k = is_distance_bounded(c.protocol) ? c.rounds_r
                              : (c.protocol == ProtocolId::DKW || c.protocol == ProtocolId::KK) ? c.challenge_count_c
                                                                                                  : 0;
      const auto blocks = static_cast<double>(c.blocks());
      const double f = std::floor(stored * blocks + 1e-9) / blocks;
      const double analytic = k ? security::acceptance_probability(f, k) : 0.0;
      const bool within = k && std::abs(mc.rate - analytic) <= 3 * security::binomial_std_error(analytic, trials);
      if (format == "json") {
        out << json{{"protocol", std::string(to_string(c.protocol))},
                    {"stored_fraction", f},
                    {"k", k},
                    {"trials", mc.trials},
                    {"accepted", mc.accepted},
                    {"rate", mc.rate},
                    {"std_error", mc.std_error},
                    {"analytic", analytic},
                    {"within_3se", within}}
                   .dump(2)
            << '\n';
      } else {
        out << "protocol,stored_fraction,k,trials,accepted,rate,std_error,analytic,within_3se\n"
            << to_string(c.protocol) << ',' << fixed(f, 6) << ',' << k << ',' << mc.trials << ',' << mc.accepted
            << ',' << sci(mc.rate) << ',' << sci(mc.std_error) << ',' << sci(analytic) << ','
            << (within ? "true" : "false") << '\n';
      }
    } else if (self->parsed()) {
      return selftest(out) ? kExitOk : kExitInternal;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_validation(e.code()) ? kExitInvalid : kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace erasure
