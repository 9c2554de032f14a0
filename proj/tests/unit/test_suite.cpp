#include "doctest.h"

#include <algorithm>

#include "caloron/errors.hpp"
#include "caloron/suite.hpp"

using namespace caloron;

TEST_CASE("the scenario registry is stable") {
    const std::vector<std::string> names = scenario_names();
    REQUIRE(names.size() == 10);
    CHECK(names.front() == "coefficients");
    CHECK(std::find(names.begin(), names.end(), "twz") != names.end());
    CHECK(std::find(names.begin(), names.end(), "determinism") != names.end());
}

TEST_CASE("configs outside the desk-scale envelope are rejected") {
    ScenarioConfig cfg;
    CHECK_NOTHROW(validate_config(cfg));

    ScenarioConfig bad_rank = cfg;
    bad_rank.rank_n = 99;
    CHECK_THROWS_AS(validate_config(bad_rank), ValidationError);

    ScenarioConfig odd_grid = cfg;
    odd_grid.grid = {17};
    CHECK_THROWS_AS(validate_config(odd_grid), ValidationError);

    ScenarioConfig tiny_theta = cfg;
    tiny_theta.theta_samples = 8;
    CHECK_THROWS_AS(validate_config(tiny_theta), ValidationError);

    ScenarioConfig many_axes = cfg;
    many_axes.grid = {16, 16, 16, 16, 16};
    CHECK_THROWS_AS(validate_config(many_axes), ValidationError);

    ScenarioConfig bad_output = cfg;
    bad_output.output = "xml";
    CHECK_THROWS_AS(validate_config(bad_output), ValidationError);

    ScenarioConfig unknown = cfg;
    unknown.scenario = "no-such-scenario";
    CHECK_THROWS_AS(validate_config(unknown), ValidationError);
}

TEST_CASE("the coefficient scenario passes and reports deterministically") {
    ScenarioConfig cfg;
    cfg.scenario = "coefficients";
    const std::vector<CheckRecord> records = run_scenarios(cfg);
    REQUIRE_FALSE(records.empty());
    CHECK(all_passed(records));
    for (const CheckRecord& r : records) {
        CHECK(r.pass);
        CHECK(r.residual <= r.tolerance);
        CHECK_FALSE(r.check_id.empty());
        CHECK_FALSE(r.summary.empty());
    }
    CHECK(std::is_sorted(records.begin(), records.end(),
                         [](const CheckRecord& a, const CheckRecord& b) {
                             return a.check_id < b.check_id;
                         }));

    const std::string again = report_json(cfg, run_scenarios(cfg));
    CHECK(report_json(cfg, records) == again);
}

TEST_CASE("reports carry one row per check in both serializations") {
    ScenarioConfig cfg;
    cfg.scenario = "coefficients";
    const std::vector<CheckRecord> records = run_scenarios(cfg);

    const std::string csv = report_csv(records);
    CHECK(csv.rfind("check_id,summary,residual,tolerance,pass,wall_ms", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(records.size()) + 1);

    const std::string json_text = report_json(cfg, records);
    CHECK(json_text.find("\"failures\": 0") != std::string::npos);
    CHECK(json_text.find(records.front().check_id) != std::string::npos);
}

TEST_CASE("an empty record set never counts as a pass") {
    CHECK_FALSE(all_passed({}));
}

TEST_CASE("scaling tolerances to zero drives checks into the failure path") {
    ScenarioConfig cfg;
    cfg.scenario = "loops";
    cfg.tol_scale = 1e-30;
    const std::vector<CheckRecord> records = run_scenarios(cfg);
    CHECK_FALSE(all_passed(records));
    bool some_fail = false;
    for (const CheckRecord& r : records) some_fail = some_fail || !r.pass;
    CHECK(some_fail);
}

TEST_CASE("truncation removes the high-degree checks only") {
    ScenarioConfig cfg;
    cfg.scenario = "string";
    const size_t full = run_scenarios(cfg).size();
    cfg.truncate = 1;
    const std::vector<CheckRecord> cut = run_scenarios(cfg);
    CHECK(cut.size() < full);
    CHECK(all_passed(cut));
}
