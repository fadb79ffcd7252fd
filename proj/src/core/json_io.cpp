#include "dll/core/json_io.hpp"

#include <string>

#include "dll/core/errors.hpp"

namespace dll {

namespace detail {

double require_number(const nlohmann::json& j, const char* key, const char* context) {
    if (!j.contains(key))
        throw ConfigError(std::string(context) + "." + key + " is missing");
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ConfigError(std::string(context) + "." + key + " must be a number");
    return v.get<double>();
}

double optional_number(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw ConfigError(std::string("field ") + key + " must be a number");
    return j.at(key).get<double>();
}

double frequency_scale(const nlohmann::json& j, const char* context) {
    if (!j.contains("units"))
        throw ConfigError(std::string(context) + ".units is missing (expected \"Hz\" or \"rad/s\")");
    const std::string units = j.at("units").get<std::string>();
    if (units == "Hz") return kTwoPi;
    if (units == "rad/s") return 1.0;
    throw ConfigError(std::string(context) + ".units must be \"Hz\" or \"rad/s\", got \"" + units + "\"");
}

}  // namespace detail

using detail::frequency_scale;
using detail::require_number;

nlohmann::json to_json(const DeviceParams& p) {
    return nlohmann::json{
        {"units", "rad/s"}, {"kappa0", p.kappa0},       {"gamma", p.gamma},
        {"n_th", p.n_th},   {"gamma_phi", p.gamma_phi}, {"g", p.g},
        {"delta", p.delta}, {"T_m", p.t_m},
    };
}

DeviceParams device_params_from_json(const nlohmann::json& j) {
    const double scale = frequency_scale(j, "device");
    DeviceParams p;
    p.kappa0 = require_number(j, "kappa0", "device");
    p.gamma = require_number(j, "gamma", "device");
    p.n_th = require_number(j, "n_th", "device");
    p.gamma_phi = require_number(j, "gamma_phi", "device");
    p.g = scale * require_number(j, "g", "device");
    p.delta = scale * require_number(j, "delta", "device");
    p.t_m = require_number(j, "T_m", "device");
    return p;
}

nlohmann::json to_json(const NoiseInjection& n) {
    return nlohmann::json{
        {"units", "rad/s"}, {"dw1", n.dw1},  {"dw2", n.dw2},
        {"T_rand", n.t_rand}, {"beat", n.beat},
    };
}

NoiseInjection noise_injection_from_json(const nlohmann::json& j) {
    const double scale = frequency_scale(j, "noise");
    NoiseInjection n;
    n.dw1 = scale * require_number(j, "dw1", "noise");
    n.dw2 = scale * require_number(j, "dw2", "noise");
    n.t_rand = require_number(j, "T_rand", "noise");
    n.beat = scale * require_number(j, "beat", "noise");
    return n;
}

nlohmann::json to_json(const ReadoutModel& r) {
    return nlohmann::json{{"p_false_pos", r.p_false_pos}, {"p_false_neg", r.p_false_neg}};
}

ReadoutModel readout_model_from_json(const nlohmann::json& j) {
    ReadoutModel r;
    r.p_false_pos = require_number(j, "p_false_pos", "readout");
    r.p_false_neg = require_number(j, "p_false_neg", "readout");
    return r;
}

nlohmann::json to_json(const ProtocolConfig& c) {
    return nlohmann::json{
        {"total_time", c.total_time},
        {"sample_times", c.sample_times},
        {"n_shots", c.n_shots},
        {"seed", c.seed},
        {"include_reverse_dd", c.include_reverse_dd},
        {"post_select_init", c.post_select_init},
    };
}

ProtocolConfig protocol_config_from_json(const nlohmann::json& j) {
    ProtocolConfig c;
    c.total_time = require_number(j, "total_time", "protocol");
    if (j.contains("sample_times")) {
        if (!j.at("sample_times").is_array())
            throw ConfigError("protocol.sample_times must be an array");
        c.sample_times = j.at("sample_times").get<std::vector<double>>();
    }
    const double n_shots = require_number(j, "n_shots", "protocol");
    c.n_shots = static_cast<std::int64_t>(n_shots);
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("include_reverse_dd")) c.include_reverse_dd = j.at("include_reverse_dd").get<bool>();
    if (j.contains("post_select_init")) c.post_select_init = j.at("post_select_init").get<bool>();
    return c;
}

}  // namespace dll
