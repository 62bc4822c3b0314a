#pragma once

#include "lrfs/control.hpp"
#include "lrfs/gci_fusion.hpp"
#include "lrfs/glmb_filter.hpp"
#include "lrfs/ospa.hpp"
#include "lrfs/sensor_model.hpp"
#include "lrfs/world_sim.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace lrfs {

struct SensorSpec {
    /// Initial pose and noise/detection/clutter parameters. The platform is
    /// parked (speed 0) until the first decision.
    SensorModel model;
    double cruise_speed_mps = 25.0;
};

struct ScenarioConfig {
    std::string name = "default";
    SurveillanceRegion region;

    double period_s = 1.0;
    double sigma_v_mps2 = 5.0;
    double survival_probability = 0.98;
    bool truth_process_noise = false;

    std::vector<TargetSpec> targets;
    BirthModel birth;
    std::vector<SensorSpec> sensors;
    FusionWeights fusion;

    FilterParams filter;
    /// Replace every local posterior with the fused density after each scan.
    bool fused_feedback = true;
    MixtureReductionParams reduction;
    ControlConfig control;
    double action_step_deg = 30.0;

    int num_scans = 40;
    std::vector<int> decision_scans{10, 20, 30};

    OspaParams ospa;
    /// Scans at the end of the run averaged for the per-run summary score.
    int final_window_scans = 10;
    /// Share measurement-noise seeds across strategies.
    bool paired_measurement_noise = false;

    /// Throws ConfigError on inconsistent settings.
    void validate() const;

    [[nodiscard]] MotionModel motion() const;
    /// Dynamics over one control step.
    [[nodiscard]] MotionModel step_motion() const;
    [[nodiscard]] ControlActionGrid action_grid() const;
};

/// Four targets near the centre of a 4 km square watched by two parked
/// sensors at the southern corners. Reconstructed geometry.
[[nodiscard]] ScenarioConfig default_scenario();

/// Fields absent from the document keep their default_scenario() values.
[[nodiscard]] ScenarioConfig scenario_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json scenario_to_json(const ScenarioConfig& cfg);
[[nodiscard]] ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace lrfs
