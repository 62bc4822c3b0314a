#pragma once

#include "lrfs/control.hpp"
#include "lrfs/scenario.hpp"
#include "lrfs/types.hpp"
#include "lrfs/world_sim.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lrfs {

enum class Strategy { random, idm, jdm };

[[nodiscard]] std::string_view to_string(Strategy s);
/// Throws ConfigError on an unknown name.
[[nodiscard]] Strategy parse_strategy(std::string_view name);

/// Per-sensor local filters plus the latest fused density.
struct TrackerState {
    std::vector<DeltaGlmbDensity> locals;
    MDeltaGlmbDensity fused;

    [[nodiscard]] static TrackerState initial(std::size_t sensors);
};

struct ScanCycleResult {
    std::vector<LabeledState> estimate;
    /// Sensors share no label set; the first sensor's marginal stood in for the fused density.
    bool fusion_fallback = false;
    std::size_t missed_fallbacks = 0;
};

/// Local predict/update per sensor, GCI fusion and MAP extraction.
ScanCycleResult run_scan_cycle(TrackerState& state, std::span<const MeasurementSet> measurements,
                               std::span<const SensorModel> sensors, const ScenarioConfig& cfg, int scan);

struct ScanRecord {
    int scan = 0;
    double ospa = 0.0;
    std::vector<LabeledState> truth;
    std::vector<LabeledState> estimates;
    std::vector<SensorPose> sensors;
    bool fusion_fallback = false;
};

struct DecisionRecord {
    int scan = 0;
    Decision decision;
    double seconds = 0.0;
};

struct RunRecord {
    int run = 0;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    std::vector<ScanRecord> scans;
    std::vector<DecisionRecord> decisions;
    double seconds = 0.0;
};

struct SeedPlan {
    std::uint64_t run = 0;
    std::uint64_t truth = 0;
    std::uint64_t measurement = 0;

    [[nodiscard]] std::uint64_t control(int scan) const;
    [[nodiscard]] std::uint64_t random_action(int scan) const;
};

/// Truth seeds depend only on (base_seed, run); measurement seeds also on the
/// strategy unless the scenario pairs them.
[[nodiscard]] SeedPlan seed_plan(std::uint64_t base_seed, int run, Strategy strategy, bool paired_measurement_noise);

/// One Monte Carlo run. Failures are captured in the record, not thrown.
[[nodiscard]] RunRecord run_single(const ScenarioConfig& cfg, Strategy strategy, int run, std::uint64_t base_seed);

struct ExperimentOptions {
    int runs = 1;
    std::uint64_t base_seed = 0;
    int threads = 1;
    /// Called from worker threads as runs finish.
    std::function<void(Strategy, const RunRecord&)> on_run_complete;
};

/// Runs in parallel over `threads` workers; results are ordered by run index.
[[nodiscard]] std::vector<RunRecord> run_experiment(const ScenarioConfig& cfg, Strategy strategy,
                                                    const ExperimentOptions& options);

struct StrategySummary {
    Strategy strategy = Strategy::random;
    std::size_t runs_completed = 0;
    std::vector<std::pair<int, std::string>> failures;
    std::vector<double> mean_ospa;
    std::vector<double> std_ospa;
    /// Mean OSPA over the final window, one value per completed run.
    std::vector<int> completed_runs;
    std::vector<double> final_window;
    double final_window_mean = 0.0;
    std::size_t decision_fallbacks = 0;
    std::size_t fusion_fallbacks = 0;
};

[[nodiscard]] StrategySummary summarize(const ScenarioConfig& cfg, Strategy strategy, std::span<const RunRecord> runs);

/// One-sided paired t-test of H1: mean(a) < mean(b), over runs completed by both.
struct PairedComparison {
    Strategy a = Strategy::jdm;
    Strategy b = Strategy::random;
    std::size_t pairs = 0;
    double mean_difference = 0.0;
    double t_statistic = 0.0;
    double p_value = 1.0;
};

[[nodiscard]] PairedComparison paired_comparison(const StrategySummary& a, const StrategySummary& b);

struct StrategyResult {
    Strategy strategy = Strategy::random;
    std::vector<RunRecord> runs;
    double seconds = 0.0;
};

/// Writes <dir>/<strategy>/{runs,decisions,estimates}.csv, <dir>/summary.json
/// and <dir>/timing.json. Only timing.json depends on wall-clock time.
void write_outputs(const std::filesystem::path& dir, const ScenarioConfig& cfg, std::uint64_t base_seed,
                   std::span<const StrategyResult> results);

[[nodiscard]] nlohmann::json summary_json(const ScenarioConfig& cfg, std::uint64_t base_seed,
                                          std::span<const StrategyResult> results);

}  // namespace lrfs
