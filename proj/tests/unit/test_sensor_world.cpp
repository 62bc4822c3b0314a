#include "lrfs/random.hpp"
#include "lrfs/sensor_model.hpp"
#include "lrfs/world_sim.hpp"

#include "util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace lrfs;
using namespace lrfs::test;

TEST(SensorModel, NoiseAndDetectionLaws) {
    SensorModel s;
    EXPECT_NEAR(s.range_noise_std(1000.0), 60.0, 1e-12);
    EXPECT_NEAR(s.bearing_noise_std(1000.0), std::numbers::pi / 180.0 + 5e-3, 1e-15);
    EXPECT_DOUBLE_EQ(s.detection_probability(0.0), 1.0);
    EXPECT_NEAR(s.detection_probability(10000.0), std::exp(-0.5), 1e-15);
    EXPECT_NEAR(s.detection_probability(8000.0), 0.7261490370736908, 1e-15);
    const auto r = s.noise_covariance(1000.0);
    EXPECT_NEAR(r(1, 1), 3600.0, 1e-9);
    EXPECT_EQ(r(0, 1), 0.0);
}

TEST(SensorModel, ClutterIntensityIntegratesToRate) {
    SensorModel s;
    s.position = Eigen::Vector2d(-1200, -1200);
    // kappa is a density in (bearing, range); integrating over polar cells that
    // cover the region recovers the clutter rate.
    const int nb = 720, nr = 2000;
    const double rmax = s.region.max_range_from(s.position);
    double total = 0.0;
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nr; ++j) {
            const double th = -std::numbers::pi + (i + 0.5) * 2 * std::numbers::pi / nb;
            const double r = (j + 0.5) * rmax / nr;
            const Eigen::Vector2d p = s.position + r * Eigen::Vector2d(std::cos(th), std::sin(th));
            if (!s.region.contains(p)) continue;
            total += s.clutter_intensity(Measurement(th, r)) * (2 * std::numbers::pi / nb) * (rmax / nr);
        }
    EXPECT_NEAR(total, s.clutter_rate, 0.01 * s.clutter_rate);
}

TEST(SensorModel, HeadingWrapAndPlatformMotion) {
    SensorModel s;
    s.heading_deg = 170.0;
    s.speed_mps = 25.0;
    const auto t = apply_action(s, ControlAction{30.0});
    EXPECT_NEAR(t.heading_deg, -160.0, 1e-12);
    EXPECT_NEAR(wrap_degrees(-180.0), 180.0, 1e-12);
    EXPECT_NEAR(wrap_angle(std::numbers::pi), -std::numbers::pi, 1e-12);
    SensorModel n;
    n.heading_deg = 90.0;
    n.speed_mps = 25.0;
    const auto a = advance(n, 2.0);
    EXPECT_NEAR(a.position.x(), 0.0, 1e-9);
    EXPECT_NEAR(a.position.y(), 50.0, 1e-9);
}

TEST(SensorModel, IdealMeasurementGeometry) {
    SensorModel s;
    s.position = Eigen::Vector2d(0, -1000);
    const auto z = s.ideal_measurement(vec({0, 0, 0, 0}));
    EXPECT_NEAR(z(0), std::numbers::pi / 2, 1e-12);
    EXPECT_NEAR(z(1), 1000.0, 1e-12);
}

TEST(WorldSim, NoiselessPropagationAndSchedule) {
    const auto motion = MotionModel::constant_velocity(1.0, 5.0, 0.98);
    std::vector<TargetSpec> sched{
        {TrackLabel{1, 0}, KinematicState{0, 10, 0, -3}, 1, 4},
        {TrackLabel{3, 0}, KinematicState{100, 0, 100, 0}, 3, 1 << 30},
    };
    Rng rng(1);
    TruthFrame f;
    f.scan = 0;
    std::vector<std::size_t> counts;
    for (int k = 1; k <= 5; ++k) {
        f = propagate_targets(f, sched, motion, 5.0, rng, false);
        counts.push_back(f.targets.size());
        if (k == 3) {
            ASSERT_EQ(f.targets.size(), 2u);
            EXPECT_NEAR(f.targets[0].state(0), 20.0, 1e-12);
            EXPECT_NEAR(f.targets[0].state(1), -6.0, 1e-12);
        }
    }
    EXPECT_EQ(counts, (std::vector<std::size_t>{1, 1, 2, 1, 1}));
    EXPECT_EQ(f.targets[0].label, (TrackLabel{3, 0}));
}

TEST(WorldSim, SameSeedSameWorld) {
    const auto motion = MotionModel::constant_velocity(1.0, 5.0, 0.98);
    std::vector<TargetSpec> sched{{TrackLabel{1, 0}, KinematicState{0, 10, 0, -3}, 1}};
    SensorModel s;
    s.position = Eigen::Vector2d(-1200, -1200);
    auto once = [&] {
        Rng rng(42);
        TruthFrame f;
        std::ostringstream os;
        for (int k = 1; k <= 5; ++k) {
            f = propagate_targets(f, sched, motion, 5.0, rng, true);
            const std::vector<ScanMeasurements> m{measure(f.targets, s, rng)};
            write_scan_log(os, 0, f, m);
        }
        return os.str();
    };
    EXPECT_EQ(once(), once());
}

TEST(WorldSim, MeasurementStatistics) {
    SensorModel s;
    s.position = Eigen::Vector2d(0, 0);
    const std::vector<LabeledState> far{{L1, vec({8000, 0, 0, 0})}};
    Rng rng(3);
    const int n = 10000;
    int det = 0;
    double clutter = 0;
    for (int i = 0; i < n; ++i) {
        const auto m = measure(far, s, rng);
        for (int o : m.origin) {
            if (o >= 0) ++det;
            else ++clutter;
        }
    }
    const double pd = s.detection_probability(8000.0);
    EXPECT_NEAR(det / double(n), pd, 3 * std::sqrt(pd * (1 - pd) / n));
    EXPECT_NEAR(clutter / n, 25.0, 3 * std::sqrt(25.0 / n));

    const std::vector<LabeledState> near{{L1, vec({1000, 500, 0, 0})}};
    MeasureOptions opt;
    opt.clutter = false;
    opt.missed_detections = false;
    const auto ideal = s.ideal_measurement(near[0].state);
    const double d = s.distance_to(near[0].state);
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    Eigen::Matrix2d sq = Eigen::Matrix2d::Zero();
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
        const auto z = measure(near, s, rng, opt).z.at(0);
        const Eigen::Vector2d e(wrap_angle(z(0) - ideal(0)), z(1) - ideal(1));
        sum += e;
        sq += e * e.transpose();
    }
    const Eigen::Matrix2d cov = sq / m - (sum / m) * (sum / m).transpose();
    const auto r = s.noise_covariance(d);
    EXPECT_NEAR(cov(0, 0), r(0, 0), 0.05 * r(0, 0));
    EXPECT_NEAR(cov(1, 1), r(1, 1), 0.05 * r(1, 1));
    EXPECT_LT(std::abs(cov(0, 1) / std::sqrt(cov(0, 0) * cov(1, 1))), 0.02);
}
