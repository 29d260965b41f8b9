#pragma once

#include "volcp/filter.hpp"

#include <json.hpp>

namespace volcp {

// Versioned checkpoint document:
// {
//   "format": "volcp.filter_state", "version": 1,
//   "t": int, "last_y": number,
//   "config": {"a", "b", "delta0", "delta1", "include_mu", "max_support",
//              "hazard": {"kind": "shifted_geometric", "p"} |
//                        {"kind": "tabulated", "cdf": [...]}},
//   "atoms": [{"s", "log_weight",
//              "stats": {"cov_factor": [[...]], "cross": [...], "sum_sq", "count"}}]
// }
inline constexpr int kFilterStateVersion = 1;

nlohmann::json hazard_to_json(const HazardModel& hm);
HazardModel hazard_from_json(const nlohmann::json& j);

nlohmann::json filter_config_to_json(const FilterConfig& cfg);
FilterConfig filter_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ChangepointFilter& f);
ChangepointFilter filter_from_json(const nlohmann::json& j);

}  // namespace volcp
