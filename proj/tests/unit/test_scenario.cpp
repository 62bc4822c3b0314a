#include "lrfs/errors.hpp"
#include "lrfs/scenario.hpp"

#include <gtest/gtest.h>

using namespace lrfs;

TEST(Scenario, DefaultValidatesAndRoundTrips) {
    const auto cfg = default_scenario();
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.sensors.size(), 2u);
    EXPECT_EQ(cfg.num_scans, 40);
    EXPECT_EQ(cfg.decision_scans, (std::vector<int>{10, 20, 30}));
    const auto j = scenario_to_json(cfg);
    EXPECT_EQ(scenario_to_json(scenario_from_json(j)), j);
}

TEST(Scenario, ShippedFileEqualsBuiltInDefault) {
    const auto file = load_scenario(std::filesystem::path(LRFS_SOURCE_DIR) / "scenarios" / "default.json");
    EXPECT_EQ(scenario_to_json(file), scenario_to_json(default_scenario()));
}

TEST(Scenario, PartialDocumentKeepsDefaults) {
    const auto cfg = scenario_from_json(nlohmann::json{{"schedule", {{"num_scans", 35}}}});
    EXPECT_EQ(cfg.num_scans, 35);
    EXPECT_EQ(cfg.sensors.size(), default_scenario().sensors.size());
}

TEST(Scenario, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW((void)scenario_from_json(nlohmann::json{{"num_scanz", 12}}), ConfigError);
    EXPECT_THROW((void)scenario_from_json(nlohmann::json{{"schedule", {{"num_scans", "many"}}}}), ConfigError);
    auto j = scenario_to_json(default_scenario());
    j["sensors"] = nlohmann::json::array();
    EXPECT_THROW((void)scenario_from_json(j), ConfigError);
    EXPECT_THROW((void)load_scenario("/nonexistent/scenario.json"), ConfigError);
}

TEST(Scenario, MotionModels) {
    const auto cfg = default_scenario();
    const auto m = cfg.motion();
    EXPECT_NEAR(m.process_noise(0, 0), 6.25, 1e-12);
    EXPECT_NEAR(m.transition(0, 2), 1.0, 0.0);
    EXPECT_NEAR(m.transition(1, 3), 1.0, 0.0);
    EXPECT_NEAR(cfg.step_motion().period_s, cfg.control.step_s, 0.0);
    EXPECT_EQ(cfg.action_grid().joint_size(), 169u);
}
