#pragma once

#include <json.hpp>

#include "dll/core/params.hpp"

namespace dll {

// External JSON schema for the domain types. Input frequency fields are
// cyclic and must sit under an explicit {"units": "Hz"} tag; they are
// converted to angular on the way in. Serialization emits
// {"units": "rad/s"} with the exact internal values so that a
// serialize/parse round trip is lossless; "rad/s" is accordingly also
// accepted on input. Field names match the struct fields.

nlohmann::json to_json(const DeviceParams& p);
DeviceParams device_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NoiseInjection& n);
NoiseInjection noise_injection_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReadoutModel& r);
ReadoutModel readout_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ProtocolConfig& c);
ProtocolConfig protocol_config_from_json(const nlohmann::json& j);

namespace detail {
double require_number(const nlohmann::json& j, const char* key, const char* context);
double optional_number(const nlohmann::json& j, const char* key, double fallback);
/// 2*pi for "Hz", 1 for "rad/s"; throws ConfigError otherwise.
double frequency_scale(const nlohmann::json& j, const char* context);
}  // namespace detail

}  // namespace dll
