#include "volcp/config.hpp"
#include "volcp/error.hpp"

#include <doctest.h>

using namespace volcp;

TEST_SUITE("config") {

TEST_CASE("defaults") {
    const RunConfig cfg;
    CHECK(to_json(cfg).dump() ==
          R"({"a":0.0005,"b":0.0005,"delta0":10.0,"delta1":0.02,"hazard_p":0.02,"include_mu":true,)"
          R"("max_support":100,"missing_policy":"error","seed":0,"threads":0})");
    const auto fc = cfg.filter_config();
    CHECK(fc.max_support == 100);
    CHECK(fc.hazard.is_geometric());
    CHECK(fc.hazard.p() == 0.02);
    CHECK(fc.hyper.delta0 == 10.0);
}

TEST_CASE("partial overrides and strict keys") {
    const auto cfg = run_config_from_json(nlohmann::json::parse(R"({"hazard_p": 0.1, "include_mu": false})"));
    CHECK(cfg.hazard_p == 0.1);
    CHECK_FALSE(cfg.include_mu);
    CHECK(cfg.a == 5e-4);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"hazrd_p": 0.1})")), InputError);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse(R"({"a": "x"})")), InputError);
    CHECK_THROWS_AS(run_config_from_json(nlohmann::json::parse("[1]")), InputError);

    const auto round = run_config_from_json(to_json(cfg));
    CHECK(to_json(round) == to_json(cfg));
}

TEST_CASE("validation") {
    RunConfig cfg;
    cfg.hazard_p = 1.5;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = RunConfig{};
    cfg.a = -1.0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = RunConfig{};
    cfg.delta1 = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
}

}  // TEST_SUITE
