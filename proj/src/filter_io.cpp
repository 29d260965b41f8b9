#include "volcp/filter_io.hpp"

#include "volcp/error.hpp"

#include <string>

namespace volcp {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("filter state is missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string("filter state field '") + key + "': " + e.what());
    }
}

SegmentStats stats_from_json(const json& j, int dim) {
    SegmentStats s;
    const auto rows = field<std::vector<std::vector<double>>>(j, "cov_factor");
    const auto cross = field<std::vector<double>>(j, "cross");
    if (static_cast<int>(rows.size()) != dim || static_cast<int>(cross.size()) != dim) {
        throw InputError("atom statistics have the wrong dimension");
    }
    s.cov_factor = Matrix(dim, dim);
    s.cross = Vector(dim);
    for (int r = 0; r < dim; ++r) {
        if (static_cast<int>(rows[r].size()) != dim) throw InputError("cov_factor is not square");
        for (int c = 0; c < dim; ++c) s.cov_factor(r, c) = rows[r][c];
        s.cross(r) = cross[r];
    }
    s.sum_sq = field<double>(j, "sum_sq");
    s.count = field<std::int64_t>(j, "count");
    return s;
}

json stats_to_json(const SegmentStats& s) {
    json rows = json::array();
    for (int r = 0; r < s.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < s.dim(); ++c) row.push_back(s.cov_factor(r, c));
        rows.push_back(row);
    }
    json cross = json::array();
    for (int r = 0; r < s.dim(); ++r) cross.push_back(s.cross(r));
    return {{"cov_factor", rows}, {"cross", cross}, {"sum_sq", s.sum_sq}, {"count", s.count}};
}

}  // namespace

json hazard_to_json(const HazardModel& hm) {
    if (hm.is_geometric()) return {{"kind", "shifted_geometric"}, {"p", hm.p()}};
    return {{"kind", "tabulated"}, {"cdf", hm.table()}};
}

HazardModel hazard_from_json(const json& j) {
    const auto kind = field<std::string>(j, "kind");
    if (kind == "shifted_geometric") return HazardModel::geometric(field<double>(j, "p"));
    if (kind == "tabulated") return HazardModel::tabulated(field<std::vector<double>>(j, "cdf"));
    throw InputError("unknown hazard kind '" + kind + "'");
}

json filter_config_to_json(const FilterConfig& cfg) {
    return {{"a", cfg.hyper.a},
            {"b", cfg.hyper.b},
            {"delta0", cfg.hyper.delta0},
            {"delta1", cfg.hyper.delta1},
            {"include_mu", cfg.hyper.include_mu},
            {"max_support", cfg.max_support},
            {"hazard", hazard_to_json(cfg.hazard)}};
}

FilterConfig filter_config_from_json(const json& j) {
    FilterConfig cfg;
    cfg.hyper.a = field<double>(j, "a");
    cfg.hyper.b = field<double>(j, "b");
    cfg.hyper.delta0 = field<double>(j, "delta0");
    cfg.hyper.delta1 = field<double>(j, "delta1");
    cfg.hyper.include_mu = field<bool>(j, "include_mu");
    cfg.max_support = field<std::size_t>(j, "max_support");
    if (!j.contains("hazard")) throw InputError("filter state is missing field 'hazard'");
    cfg.hazard = hazard_from_json(j.at("hazard"));
    cfg.validate();
    return cfg;
}

json to_json(const ChangepointFilter& f) {
    json atoms = json::array();
    for (const auto& a : f.atoms()) {
        atoms.push_back({{"s", a.s}, {"log_weight", a.log_weight}, {"stats", stats_to_json(a.stats)}});
    }
    return {{"format", "volcp.filter_state"},
            {"version", kFilterStateVersion},
            {"t", f.t()},
            {"last_y", f.last_y()},
            {"config", filter_config_to_json(f.config())},
            {"atoms", atoms}};
}

ChangepointFilter filter_from_json(const json& j) {
    if (field<std::string>(j, "format") != "volcp.filter_state") throw InputError("not a filter state document");
    const int version = field<int>(j, "version");
    if (version != kFilterStateVersion) {
        throw InputError("unsupported filter state version " + std::to_string(version));
    }
    auto cfg = filter_config_from_json(j.at("config"));
    const int dim = cfg.hyper.dim();
    std::vector<SupportAtom> atoms;
    if (!j.contains("atoms") || !j.at("atoms").is_array()) throw InputError("filter state is missing 'atoms'");
    for (const auto& ja : j.at("atoms")) {
        if (!ja.contains("stats")) throw InputError("atom is missing 'stats'");
        atoms.push_back({field<std::int64_t>(ja, "s"), field<double>(ja, "log_weight"), stats_from_json(ja.at("stats"), dim)});
    }
    return ChangepointFilter::restore(std::move(cfg), field<std::int64_t>(j, "t"), field<double>(j, "last_y"),
                                      std::move(atoms));
}

}  // namespace volcp
