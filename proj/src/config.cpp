#include "volcp/config.hpp"

#include "volcp/error.hpp"

#include <fstream>
#include <string>

namespace volcp {

using nlohmann::json;

void RunConfig::validate() const {
    filter_config().validate();
}

Hyperparams RunConfig::hyperparams() const { return Hyperparams{a, b, delta0, delta1, include_mu}; }

FilterConfig RunConfig::filter_config() const {
    FilterConfig cfg{hyperparams(), HazardModel::geometric(hazard_p), max_support};
    cfg.validate();
    return cfg;
}

json to_json(const RunConfig& cfg) {
    return {{"hazard_p", cfg.hazard_p},       {"a", cfg.a},
            {"b", cfg.b},                     {"delta0", cfg.delta0},
            {"delta1", cfg.delta1},           {"max_support", cfg.max_support},
            {"include_mu", cfg.include_mu},   {"missing_policy", to_string(cfg.missing_policy)},
            {"threads", cfg.threads},         {"seed", cfg.seed}};
}

RunConfig run_config_from_json(const json& j, RunConfig cfg) {
    if (!j.is_object()) throw InputError("configuration must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "hazard_p") cfg.hazard_p = value.get<double>();
            else if (key == "a") cfg.a = value.get<double>();
            else if (key == "b") cfg.b = value.get<double>();
            else if (key == "delta0") cfg.delta0 = value.get<double>();
            else if (key == "delta1") cfg.delta1 = value.get<double>();
            else if (key == "max_support") cfg.max_support = value.get<std::size_t>();
            else if (key == "include_mu") cfg.include_mu = value.get<bool>();
            else if (key == "missing_policy") cfg.missing_policy = parse_missing_policy(value.get<std::string>());
            else if (key == "threads") cfg.threads = value.get<unsigned>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else throw InputError("unknown configuration key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("configuration: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open configuration " + path.string());
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw InputError("configuration " + path.string() + " is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

}  // namespace volcp
