#pragma once

// nlohmann/json conversions shared by the config loader, the bench matrix
// reader and the CLI. Internal header.

#include <json.hpp>

#include "erasure/core.hpp"

namespace erasure::json_io {

using nlohmann::json;

/// Throws Error{ParseError} if `obj` has a key outside `allowed`.
void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where);

json device_to_json(const DeviceProfile& d);
json network_to_json(const NetworkProfile& n);
json scenario_to_json(const ScenarioConfig& c);

/// Devices and networks may be given as a full object or as the name of a
/// default profile.
DeviceProfile device_from_json(const json& j);
NetworkProfile network_from_json(const json& j);
ScenarioConfig scenario_from_json(const json& j);

ProtocolId protocol_from_json(const json& j);
HashId hash_from_json(const json& j);

}  // namespace erasure::json_io
