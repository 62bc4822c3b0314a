#include "lrfs/experiment.hpp"
#include "lrfs/errors.hpp"
#include "lrfs/glmb_filter.hpp"

#include "util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <fstream>
#include <sstream>

using namespace lrfs;
using namespace lrfs::test;

namespace {

ScenarioConfig small_scenario() {
    auto cfg = default_scenario();
    cfg.num_scans = 8;
    cfg.decision_scans = {4};
    cfg.final_window_scans = 4;
    cfg.control.horizon = 2;
    cfg.control.num_samples = 3;
    cfg.action_step_deg = 90.0;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("lrfs_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST(Strategy, ParseRoundTrip) {
    for (auto s : {Strategy::random, Strategy::idm, Strategy::jdm}) EXPECT_EQ(parse_strategy(to_string(s)), s);
    EXPECT_THROW((void)parse_strategy("greedy"), ConfigError);
}

TEST(Seeds, TruthSharedAcrossStrategies) {
    const auto a = seed_plan(7, 3, Strategy::jdm, false);
    const auto b = seed_plan(7, 3, Strategy::random, false);
    EXPECT_EQ(a.truth, b.truth);
    EXPECT_NE(a.measurement, b.measurement);
    EXPECT_EQ(seed_plan(7, 3, Strategy::jdm, true).measurement, seed_plan(7, 3, Strategy::random, true).measurement);
    EXPECT_NE(seed_plan(7, 3, Strategy::jdm, false).truth, seed_plan(7, 4, Strategy::jdm, false).truth);
}

TEST(ScanCycle, SingleSensorFusionIsIdentity) {
    auto cfg = small_scenario();
    cfg.sensors.resize(1);
    cfg.fusion = FusionWeights::uniform(1);
    auto state = TrackerState::initial(1);
    std::vector<SensorModel> sensors{cfg.sensors[0].model};
    Rng rng(3);
    TruthFrame f;
    for (int k = 1; k <= 3; ++k) {
        f = propagate_targets(f, cfg.targets, cfg.motion(), cfg.sigma_v_mps2, rng, false);
        const std::vector<MeasurementSet> z{measure(f.targets, sensors[0], rng).z};
        const auto res = run_scan_cycle(state, z, sensors, cfg, k);
        EXPECT_FALSE(res.fusion_fallback);
        const auto local = marginalize_to_mdglmb(state.locals[0]);
        ASSERT_EQ(local.entries.size(), state.fused.entries.size());
        for (std::size_t e = 0; e < local.entries.size(); ++e) {
            EXPECT_EQ(local.entries[e].label_set, state.fused.entries[e].label_set);
            EXPECT_NEAR(local.entries[e].log_weight, state.fused.entries[e].log_weight, 1e-9);
        }
    }
}

TEST(ScanCycle, TwoSensorToyConverges) {
    auto cfg = default_scenario();
    const KinematicState x0{0.0, 5.0, 0.0, -2.0};
    cfg.targets = {TargetSpec{TrackLabel{1, 0}, x0, 1}};
    cfg.birth.tracks = {BirthTrack{0, 0.5, {gauss4(x0.to_vector(), 2500, 100)}}};
    cfg.sensors[0].model.position = Eigen::Vector2d(-500, -500);
    cfg.sensors[1].model.position = Eigen::Vector2d(500, -500);
    std::vector<SensorModel> sensors;
    for (auto& s : cfg.sensors) {
        s.model.sigma_d_m = 1e9;
        s.model.clutter_rate = 1e-6;
        sensors.push_back(s.model);
    }
    auto state = TrackerState::initial(2);
    Rng rng(8);
    TruthFrame f;
    ScanCycleResult res;
    for (int k = 1; k <= 5; ++k) {
        f = propagate_targets(f, cfg.targets, cfg.motion(), cfg.sigma_v_mps2, rng, false);
        std::vector<MeasurementSet> z;
        for (const auto& s : sensors) z.push_back(measure(f.targets, s, rng).z);
        res = run_scan_cycle(state, z, sensors, cfg, k);
    }
    ASSERT_EQ(res.estimate.size(), 1u);
    const auto* e = state.fused.find(LabelSet{res.estimate[0].label});
    ASSERT_NE(e, nullptr);
    const auto& c = e->densities[0].dominant();
    const Eigen::Vector2d err = res.estimate[0].state.head<2>() - f.targets[0].state.head<2>();
    const Eigen::Matrix2d p = c.covariance.topLeftCorner<2, 2>();
    EXPECT_LT(std::sqrt(err.dot(p.inverse() * err)), 3.0);
}

TEST(Experiment, RunSingleIsDeterministic) {
    const auto cfg = small_scenario();
    for (auto s : {Strategy::random, Strategy::idm, Strategy::jdm}) {
        const auto a = run_single(cfg, s, 0, 5);
        const auto b = run_single(cfg, s, 0, 5);
        ASSERT_FALSE(a.failed) << a.error;
        ASSERT_EQ(a.scans.size(), static_cast<std::size_t>(cfg.num_scans));
        for (std::size_t k = 0; k < a.scans.size(); ++k) EXPECT_EQ(a.scans[k].ospa, b.scans[k].ospa);
        ASSERT_EQ(a.decisions.size(), 1u);
        EXPECT_EQ(a.decisions[0].decision.actions, b.decisions[0].decision.actions);
        EXPECT_EQ(a.decisions[0].decision.expected_rewards, b.decisions[0].decision.expected_rewards);
    }
}

TEST(Experiment, SummaryMatchesPersistedRecords) {
    const auto cfg = small_scenario();
    ExperimentOptions opt;
    opt.runs = 2;
    opt.base_seed = 9;
    const std::vector<StrategyResult> res{{Strategy::random, run_experiment(cfg, Strategy::random, opt), 0.0}};
    const auto dir = temp_dir("summary");
    write_outputs(dir, cfg, opt.base_seed, res);
    const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));

    std::ifstream in(dir / "random" / "runs.csv");
    std::string line;
    std::getline(in, line);
    std::map<int, double> window;
    int rows = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string run, scan, ospa;
        std::getline(ss, run, ',');
        std::getline(ss, scan, ',');
        std::getline(ss, ospa, ',');
        ++rows;
        if (std::stoi(scan) > cfg.num_scans - cfg.final_window_scans) window[std::stoi(run)] += std::stod(ospa);
    }
    EXPECT_EQ(rows, opt.runs * cfg.num_scans);
    double mean = 0;
    for (auto& [run, v] : window) mean += v / cfg.final_window_scans / opt.runs;
    EXPECT_NEAR(summary["strategies"]["random"]["final_window_mean_ospa"].get<double>(), mean, 1e-12);
    EXPECT_EQ(summary["strategies"]["random"]["runs_completed"].get<int>(), opt.runs);
    std::filesystem::remove_all(dir);
}

TEST(Experiment, OutputsIndependentOfThreadCount) {
    const auto cfg = small_scenario();
    auto produce = [&](int threads, const std::string& name) {
        ExperimentOptions opt;
        opt.runs = 3;
        opt.base_seed = 21;
        opt.threads = threads;
        std::vector<StrategyResult> res;
        for (auto s : {Strategy::random, Strategy::idm, Strategy::jdm}) res.push_back({s, run_experiment(cfg, s, opt), 0.0});
        const auto dir = temp_dir(name);
        write_outputs(dir, cfg, opt.base_seed, res);
        return dir;
    };
    const auto a = produce(1, "threads1");
    const auto b = produce(2, "threads2");
    EXPECT_EQ(slurp(a / "summary.json"), slurp(b / "summary.json"));
    for (const char* s : {"random", "idm", "jdm"})
        for (const char* f : {"runs.csv", "decisions.csv", "estimates.csv"}) {
            const auto x = slurp(a / s / f);
            EXPECT_FALSE(x.empty());
            EXPECT_EQ(x, slurp(b / s / f)) << s << "/" << f;
        }
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST(Experiment, PairedComparisonDirection) {
    StrategySummary a, b;
    a.strategy = Strategy::jdm;
    b.strategy = Strategy::random;
    a.completed_runs = b.completed_runs = {0, 1, 2, 3};
    a.final_window = {10, 12, 11, 9};
    b.final_window = {20, 25, 22, 18};
    const auto c = paired_comparison(a, b);
    EXPECT_EQ(c.pairs, 4u);
    EXPECT_NEAR(c.mean_difference, -10.75, 1e-12);
    EXPECT_LT(c.p_value, 0.01);
    const auto r = paired_comparison(b, a);
    EXPECT_GT(r.p_value, 0.99);
}

TEST(Experiment, FirstJointDecisionModeOnDefaultScenario) {
    auto cfg = default_scenario();
    cfg.num_scans = 10;
    cfg.decision_scans = {10};
    cfg.final_window_scans = 5;
    std::map<std::pair<double, double>, int> votes;
    for (int run = 0; run < 5; ++run) {
        const auto r = run_single(cfg, Strategy::jdm, run, 11);
        ASSERT_FALSE(r.failed) << r.error;
        ASSERT_EQ(r.decisions.size(), 1u);
        const auto& a = r.decisions[0].decision.actions;
        ++votes[{a[0].heading_change_deg, a[1].heading_change_deg}];
    }
    const auto mode = std::max_element(votes.begin(), votes.end(),
                                       [](const auto& x, const auto& y) { return x.second < y.second; });
    EXPECT_EQ(mode->first, std::make_pair(-30.0, 30.0));
}
