#include "erasure/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

#include "erasure/error.hpp"
#include "erasure/protocols.hpp"
#include "json_io.hpp"

namespace erasure::bench {

using json_io::json;

void Aggregate::add(std::uint64_t v) {
  if (count == 0 || v < min) min = v;
  if (count == 0 || v > max) max = v;
  sum += v;
  ++count;
}

BenchMatrix matrix_from_json(std::string_view text, std::uint64_t base_seed) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("matrix: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "matrix: expected an object");
  json_io::reject_unknown(doc, {"scenarios", "grid", "repetitions"}, "matrix");

  BenchMatrix m;
  try {
    if (doc.contains("repetitions")) m.repetitions = doc.at("repetitions").get<std::uint32_t>();
    if (m.repetitions == 0) throw Error(ErrorCode::InvalidConfig, "InvalidConfig(repetitions): must be positive");

    if (doc.contains("scenarios")) {
      for (const auto& s : doc.at("scenarios")) {
        json copy = s;
        if (copy.is_object() && !copy.contains("seed")) copy["seed"] = base_seed;
        m.scenarios.push_back(json_io::scenario_from_json(copy));
      }
    }
    if (doc.contains("grid")) {
      const json& g = doc.at("grid");
      json_io::reject_unknown(g, {"protocols", "hashes", "devices", "networks", "memory_bytes", "rounds_r",
                                  "challenge_count_c"},
                              "grid");
      for (const char* key : {"protocols", "hashes", "devices", "networks", "memory_bytes"}) {
        if (!g.contains(key) || !g.at(key).is_array()) {
          throw Error(ErrorCode::ParseError, std::string("grid: missing array '") + key + "'");
        }
      }
      const auto rounds = g.value("rounds_r", kDefaultRounds);
      const auto challenges = g.value("challenge_count_c", kDefaultChallenges);
      for (const auto& p : g.at("protocols"))
        for (const auto& h : g.at("hashes"))
          for (const auto& d : g.at("devices"))
            for (const auto& n : g.at("networks"))
              for (const auto& mem : g.at("memory_bytes")) {
                ScenarioConfig c;
                c.protocol = json_io::protocol_from_json(p);
                c.hash = json_io::hash_from_json(h);
                c.device = json_io::device_from_json(d);
                c.network = json_io::network_from_json(n);
                c.memory_bytes = mem.get<std::uint64_t>();
                c.rounds_r = rounds;
                c.challenge_count_c = challenges;
                c.seed = base_seed;
                m.scenarios.push_back(std::move(c));
              }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("matrix: ") + e.what());
  }
  for (const auto& s : m.scenarios) validate(s);
  return m;
}

namespace {

BenchResult run_one(const ScenarioConfig& scenario, std::uint32_t repetitions) {
  BenchResult r;
  r.scenario = scenario;
  r.repetitions = repetitions;
  try {
    for (std::uint32_t rep = 0; rep < repetitions; ++rep) {
      ScenarioConfig c = scenario;
      c.seed = scenario.seed + rep;
      const RunRecord rec = execute(c);
      if (rec.accepted) ++r.accepted_count;
      r.erasure_time_ns.add(rec.erasure_time_ns);
      r.verification_time_ns.add(rec.verification_time_ns);
      r.total_time_ns.add(rec.total_time_ns);
      r.bytes_v_to_p.add(rec.transcript.bytes_v_to_p);
      r.bytes_p_to_v.add(rec.transcript.bytes_p_to_v);
      r.messages.add(rec.transcript.message_count);
      r.hash_calls_prover.add(rec.hash_calls_prover);
    }
  } catch (const std::exception& e) {
    BenchResult failed;
    failed.scenario = scenario;
    failed.repetitions = repetitions;
    failed.error = e.what();
    return failed;
  }
  return r;
}

}  // namespace

std::vector<BenchResult> run_matrix(const BenchMatrix& matrix, unsigned jobs) {
  if (matrix.repetitions == 0) throw Error(ErrorCode::InvalidConfig, "InvalidConfig(repetitions): must be positive");
  for (const auto& s : matrix.scenarios) validate(s);

  std::vector<BenchResult> results(matrix.scenarios.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, results.size()))));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) {
      results[i] = run_one(matrix.scenarios[i], matrix.repetitions);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

void write_csv(const std::vector<BenchResult>& results, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : results) {
    const auto& s = r.scenario;
    out << to_string(s.protocol) << ',' << to_string(s.hash) << ',' << s.device.name << ',' << s.network.name << ','
        << s.memory_bytes << ',' << s.rounds_r << ',' << s.challenge_count_c << ',' << s.seed << ','
        << (r.all_accepted() ? "true" : "false") << ',' << r.erasure_time_ns.mean_floor() << ','
        << r.verification_time_ns.mean_floor() << ',' << r.total_time_ns.mean_floor() << ','
        << r.bytes_v_to_p.mean_floor() << ',' << r.bytes_p_to_v.mean_floor() << ',' << r.messages.mean_floor() << ','
        << r.hash_calls_prover.mean_floor() << '\n';
  }
}

namespace {

json stat_json(const Aggregate& a, bool seconds) {
  json j = {{"mean", a.mean_floor()}, {"mean_remainder", a.mean_remainder()}, {"min", a.min}, {"max", a.max}};
  if (seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", a.mean() / 1e9);
    j["mean_s"] = buf;
  }
  return j;
}

}  // namespace

void write_json(const std::vector<BenchResult>& results, std::ostream& out) {
  json rows = json::array();
  for (const auto& r : results) {
    json row = {{"scenario", json_io::scenario_to_json(r.scenario)},
                {"repetitions", r.repetitions},
                {"accepted", r.accepted_count}};
    if (r.error) {
      row["error"] = *r.error;
    } else {
      row["erasure_time_ns"] = stat_json(r.erasure_time_ns, true);
      row["verification_time_ns"] = stat_json(r.verification_time_ns, true);
      row["total_time_ns"] = stat_json(r.total_time_ns, true);
      row["bytes_v_to_p"] = stat_json(r.bytes_v_to_p, false);
      row["bytes_p_to_v"] = stat_json(r.bytes_p_to_v, false);
      row["messages"] = stat_json(r.messages, false);
      row["hash_calls_prover"] = stat_json(r.hash_calls_prover, false);
    }
    rows.push_back(std::move(row));
  }
  out << json{{"results", rows}}.dump(2) << '\n';
}

double scaling_fit(const std::vector<BenchResult>& results, ProtocolId protocol) {
  std::map<std::uint64_t, double> by_size;
  for (const auto& r : results) {
    if (r.error || r.scenario.protocol != protocol || r.total_time_ns.count == 0) continue;
    by_size.emplace(r.scenario.memory_bytes, r.total_time_ns.mean());
  }
  if (by_size.size() < 3) throw Error(ErrorCode::InsufficientPoints, "need at least three memory sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(by_size.size());
  for (const auto& [size, t] : by_size) {
    if (t <= 0.0) throw Error(ErrorCode::InsufficientPoints, "non-positive total time");
    const double x = std::log(static_cast<double>(size));
    const double y = std::log(t);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

HashId best_hash_per(const std::vector<BenchResult>& results, ProtocolId protocol, std::string_view device) {
  std::optional<HashId> best;
  double best_time = 0.0;
  for (HashId h : kAllHashes) {
    for (const auto& r : results) {
      if (r.error || r.scenario.protocol != protocol || r.scenario.hash != h || r.scenario.device.name != device) {
        continue;
      }
      const double t = r.total_time_ns.mean();
      if (!best || t < best_time) {
        best = h;
        best_time = t;
      }
    }
  }
  if (!best) throw Error(ErrorCode::NoData, "no results for this protocol and device");
  return *best;
}

}  // namespace erasure::bench
