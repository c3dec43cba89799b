#include "json_io.hpp"

#include <algorithm>

#include "erasure/error.hpp"

namespace erasure::json_io {
namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

template <typename T>
T get_field(const json& obj, std::string_view key, std::string_view where) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) parse_error(std::string(where) + ": missing field '" + std::string(key) + "'");
  try {
    return it->template get<T>();
  } catch (const json::exception& e) {
    parse_error(std::string(where) + "." + std::string(key) + ": " + e.what());
  }
}

template <typename T>
T get_or(const json& obj, std::string_view key, T fallback, std::string_view where) {
  if (!obj.contains(std::string(key))) return fallback;
  return get_field<T>(obj, key, where);
}

}  // namespace

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  if (!obj.is_object()) parse_error(std::string(where) + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      parse_error(std::string(where) + ": unknown field '" + key + "'");
    }
  }
}

ProtocolId protocol_from_json(const json& j) {
  if (!j.is_string()) parse_error("protocol must be a string");
  const auto id = parse_protocol(j.get<std::string>());
  if (!id) parse_error("unknown protocol '" + j.get<std::string>() + "'");
  return *id;
}

HashId hash_from_json(const json& j) {
  if (!j.is_string()) parse_error("hash must be a string");
  const auto id = parse_hash(j.get<std::string>());
  if (!id) parse_error("unknown hash '" + j.get<std::string>() + "'");
  return *id;
}

json device_to_json(const DeviceProfile& d) {
  json mult = json::object();
  for (const auto& [id, m] : d.hash_speed_multiplier) mult[std::string(to_string(id))] = m;
  return json{{"name", d.name},
              {"memory_bytes", d.memory_bytes},
              {"compute_ns_per_hash_block", d.compute_ns_per_hash_block},
              {"hash_call_overhead_ns", d.hash_call_overhead_ns},
              {"hash_speed_multiplier", mult},
              {"copy_ns_per_byte", d.copy_ns_per_byte}};
}

json network_to_json(const NetworkProfile& n) {
  return json{{"name", n.name},
              {"latency_ns", n.latency_ns},
              {"bandwidth_bytes_per_s", n.bandwidth_bytes_per_s},
              {"per_message_overhead_ns", n.per_message_overhead_ns}};
}

json scenario_to_json(const ScenarioConfig& c) {
  return json{{"protocol", std::string(to_string(c.protocol))},
              {"hash", std::string(to_string(c.hash))},
              {"device", device_to_json(c.device)},
              {"network", network_to_json(c.network)},
              {"memory_bytes", c.memory_bytes},
              {"rounds_r", c.rounds_r},
              {"challenge_count_c", c.challenge_count_c},
              {"seed", c.seed}};
}

DeviceProfile device_from_json(const json& j) {
  if (j.is_string()) {
    auto d = find_device(j.get<std::string>());
    if (!d) parse_error("unknown device profile '" + j.get<std::string>() + "'");
    return *d;
  }
  reject_unknown(j,
                 {"name", "memory_bytes", "compute_ns_per_hash_block", "hash_call_overhead_ns",
                  "hash_speed_multiplier", "copy_ns_per_byte"},
                 "device");
  DeviceProfile d;
  d.name = get_field<std::string>(j, "name", "device");
  d.memory_bytes = get_field<std::uint64_t>(j, "memory_bytes", "device");
  d.compute_ns_per_hash_block = get_field<std::uint64_t>(j, "compute_ns_per_hash_block", "device");
  d.hash_call_overhead_ns = get_or<std::uint64_t>(j, "hash_call_overhead_ns", 0, "device");
  d.copy_ns_per_byte = get_field<std::uint64_t>(j, "copy_ns_per_byte", "device");
  if (j.contains("hash_speed_multiplier")) {
    const json& m = j.at("hash_speed_multiplier");
    if (!m.is_object()) parse_error("device.hash_speed_multiplier must be an object");
    for (const auto& [key, value] : m.items()) {
      const auto id = parse_hash(key);
      if (!id) parse_error("device.hash_speed_multiplier: unknown hash '" + key + "'");
      if (!value.is_number()) parse_error("device.hash_speed_multiplier values must be numbers");
      d.hash_speed_multiplier[*id] = value.get<double>();
    }
  }
  return d;
}

NetworkProfile network_from_json(const json& j) {
  if (j.is_string()) {
    auto n = find_network(j.get<std::string>());
    if (!n) parse_error("unknown network profile '" + j.get<std::string>() + "'");
    return *n;
  }
  reject_unknown(j, {"name", "latency_ns", "bandwidth_bytes_per_s", "per_message_overhead_ns"},
                 "network");
  NetworkProfile n;
  n.name = get_field<std::string>(j, "name", "network");
  n.latency_ns = get_field<std::uint64_t>(j, "latency_ns", "network");
  n.bandwidth_bytes_per_s = get_field<std::uint64_t>(j, "bandwidth_bytes_per_s", "network");
  n.per_message_overhead_ns = get_field<std::uint64_t>(j, "per_message_overhead_ns", "network");
  return n;
}

ScenarioConfig scenario_from_json(const json& j) {
  reject_unknown(j,
                 {"protocol", "hash", "device", "network", "memory_bytes", "rounds_r",
                  "challenge_count_c", "seed"},
                 "scenario");
  ScenarioConfig c;
  if (!j.contains("protocol")) parse_error("scenario: missing field 'protocol'");
  c.protocol = protocol_from_json(j.at("protocol"));
  if (!j.contains("hash")) parse_error("scenario: missing field 'hash'");
  c.hash = hash_from_json(j.at("hash"));
  if (!j.contains("device")) parse_error("scenario: missing field 'device'");
  c.device = device_from_json(j.at("device"));
  if (!j.contains("network")) parse_error("scenario: missing field 'network'");
  c.network = network_from_json(j.at("network"));
  c.memory_bytes = get_field<std::uint64_t>(j, "memory_bytes", "scenario");
  c.rounds_r = get_or<std::uint32_t>(j, "rounds_r", kDefaultRounds, "scenario");
  c.challenge_count_c = get_or<std::uint32_t>(j, "challenge_count_c", kDefaultChallenges, "scenario");
  c.seed = get_or<std::uint64_t>(j, "seed", 0, "scenario");
  return c;
}

}  // namespace erasure::json_io

namespace erasure {

std::string to_json(const ScenarioConfig& config) { return json_io::scenario_to_json(config).dump(); }

ScenarioConfig scenario_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("scenario JSON: ") + e.what());
  }
  return json_io::scenario_from_json(j);
}

}  // namespace erasure
