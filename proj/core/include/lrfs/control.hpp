#pragma once

#include "lrfs/cs_divergence.hpp"
#include "lrfs/gci_fusion.hpp"
#include "lrfs/glmb_filter.hpp"
#include "lrfs/random.hpp"
#include "lrfs/sensor_model.hpp"
#include "lrfs/types.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lrfs {

/// Per-sensor discrete action sets; the joint set is their Cartesian product
/// enumerated lexicographically (last sensor varies fastest).
struct ControlActionGrid {
    std::vector<std::vector<ControlAction>> per_sensor;

    /// Heading changes from -180 to 180 degrees in `step_deg` increments for each sensor.
    [[nodiscard]] static ControlActionGrid uniform(std::size_t sensors, double step_deg = 30.0);

    [[nodiscard]] std::size_t joint_size() const;
    /// Per-sensor action indices of the joint action at `flat`.
    [[nodiscard]] std::vector<std::size_t> joint_indices(std::size_t flat) const;
    void validate() const;
};

struct ControlConfig {
    int horizon = 5;
    double step_s = 2.0;
    int num_samples = 40;
    HypervolumeUnit hypervolume;
    /// Births during the pseudo-update chains (survival is always applied).
    bool pseudo_update_birth = false;
    /// Truncation used inside the pseudo-update chains.
    FilterParams pseudo_filter{.max_hypotheses = 20, .hypothesis_weight_floor = 1e-4,
                               .max_components_per_track = 2, .merge_distance = 1.0};
    /// Optional strictly increasing map applied to expected rewards before the argmax.
    std::function<double(double)> reward_transform;
};

/// Models shared by every candidate evaluation at one decision epoch.
struct ControlModels {
    /// Dynamics over one control step (period = ControlConfig::step_s).
    MotionModel step_motion;
    BirthModel birth;
    /// Sensors at the decision time, already moving at cruise speed.
    std::vector<SensorModel> sensors;
    FusionWeights fusion;
    MixtureReductionParams reduction;
    int scan = 0;
};

struct MultiTargetSample {
    std::vector<LabeledState> targets;
};

/// Instrumented work counters of one decision.
struct ControlStats {
    std::size_t pseudo_update_chains = 0;
    std::size_t fusions = 0;
    std::size_t reward_evaluations = 0;
    std::size_t excluded_candidates = 0;
};

struct Decision {
    /// One action per sensor.
    std::vector<ControlAction> actions;
    /// JDM: one expected reward per joint action (lexicographic order).
    /// IDM: per sensor, one expected reward per action, concatenated.
    std::vector<double> expected_rewards;
    /// Set when every candidate was excluded and zero heading change was used.
    bool fallback = false;
    ControlStats stats;
};

/// Draws M labeled sets: an entry by weight, then one state per track from its mixture.
[[nodiscard]] std::vector<MultiTargetSample> sample_multitarget(const MDeltaGlmbDensity& fused, int num_samples,
                                                                std::uint64_t seed);

/// H Kalman predictions per track with the step dynamics; entry weights unchanged.
[[nodiscard]] MDeltaGlmbDensity pseudo_predict(const MDeltaGlmbDensity& fused, const MotionModel& step_motion,
                                               int horizon);

/// Poses of a sensor at k + h T for h = 1..H after applying `action` at k.
[[nodiscard]] std::vector<SensorModel> sensor_trajectory(const SensorModel& sensor, const ControlAction& action,
                                                         double step_s, int horizon);

/// Noise-free, clutter-free, unit-detection measurements of the sample
/// propagated without process noise, one set per horizon step.
[[nodiscard]] std::vector<MeasurementSet> generate_pims(const MultiTargetSample& sample, const ControlAction& action,
                                                        const SensorModel& sensor, const MotionModel& step_motion,
                                                        int horizon);

/// H predict/update cycles of the local filter against the PIMS.
[[nodiscard]] DeltaGlmbDensity pseudo_update_local(const DeltaGlmbDensity& local_posterior,
                                                   std::span<const MeasurementSet> pims,
                                                   std::span<const SensorModel> trajectory,
                                                   const MotionModel& step_motion, const BirthModel& birth,
                                                   const FilterParams& params, bool birth_enabled, int scan);

/// Joint decision: argmax over the product grid of the mean CS divergence
/// between the fused pseudo-prediction and the fused pseudo-updates.
[[nodiscard]] Decision jdm_select(const MDeltaGlmbDensity& fused, std::span<const DeltaGlmbDensity> locals,
                                  const ControlActionGrid& grid, const ControlConfig& cfg,
                                  const ControlModels& models, std::uint64_t seed);

/// Independent decision: each sensor maximizes the mean CS divergence
/// between the fused pseudo-prediction and its own pseudo-update.
[[nodiscard]] Decision idm_select(const MDeltaGlmbDensity& fused, std::span<const DeltaGlmbDensity> locals,
                                  const ControlActionGrid& grid, const ControlConfig& cfg,
                                  const ControlModels& models, std::uint64_t seed);

}  // namespace lrfs
