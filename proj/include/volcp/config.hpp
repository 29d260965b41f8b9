#pragma once

#include "volcp/filter.hpp"
#include "volcp/ingest.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>

namespace volcp {

/// Run configuration shared by the CLI subcommands. Defaults: geometric gap
/// parameter 0.02, a = b = 5e-4, delta0 = 10, delta1 = 0.02, 100 support points.
struct RunConfig {
    double hazard_p = 0.02;
    double a = 5e-4;
    double b = 5e-4;
    double delta0 = 10.0;
    double delta1 = 0.02;
    std::size_t max_support = 100;
    bool include_mu = true;
    MissingPolicy missing_policy = MissingPolicy::error;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::uint64_t seed = 0;

    void validate() const;
    Hyperparams hyperparams() const;
    FilterConfig filter_config() const;
};

nlohmann::json to_json(const RunConfig& cfg);
// Keys absent from `j` keep their defaults; unknown keys are rejected.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace volcp
