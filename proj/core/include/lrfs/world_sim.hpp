#pragma once

#include "lrfs/glmb_filter.hpp"
#include "lrfs/random.hpp"
#include "lrfs/sensor_model.hpp"
#include "lrfs/types.hpp"

#include <ostream>
#include <vector>

namespace lrfs {

/// A scripted target: alive for birth_scan <= k < death_scan.
struct TargetSpec {
    TrackLabel label;
    KinematicState initial;
    int birth_scan = 1;
    int death_scan = 1 << 30;
};

/// Sensor pose at one scan.
struct SensorPose {
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    double heading_deg = 0.0;
};

struct TruthFrame {
    int scan = 0;
    std::vector<LabeledState> targets;
    std::vector<SensorPose> sensors;
};

struct GroundTruth {
    std::vector<TruthFrame> frames;
};

/// Advances every alive target one period, draws process noise when enabled,
/// removes targets whose death scan is reached and adds those born at the
/// next scan. Sensor poses are left for the caller.
[[nodiscard]] TruthFrame propagate_targets(const TruthFrame& current, std::span<const TargetSpec> schedule,
                                           const MotionModel& motion, double sigma_v_mps2, Rng& rng,
                                           bool process_noise = true);

struct MeasureOptions {
    bool noise = true;
    bool missed_detections = true;
    bool clutter = true;
};

/// A scan's measurement set; origin[i] is the index of the source target, or
/// -1 for clutter.
struct ScanMeasurements {
    MeasurementSet z;
    std::vector<int> origin;
};

[[nodiscard]] ScanMeasurements measure(std::span<const LabeledState> targets, const SensorModel& sensor, Rng& rng,
                                       const MeasureOptions& options = {});

/// One CSV row per entity: run,scan,kind,sensor,label,a,b,c,d with kind in
/// {truth, meas, clutter}. Truth rows carry px,py,vx,vy; measurement rows
/// carry bearing_rad,range_m.
void write_scan_log_header(std::ostream& os);
void write_scan_log(std::ostream& os, int run, const TruthFrame& frame,
                    std::span<const ScanMeasurements> per_sensor);

}  // namespace lrfs
