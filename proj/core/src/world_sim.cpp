#include "lrfs/world_sim.hpp"

#include "lrfs/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lrfs {

TruthFrame propagate_targets(const TruthFrame& current, std::span<const TargetSpec> schedule,
                             const MotionModel& motion, double sigma_v_mps2, Rng& rng, bool process_noise) {
    TruthFrame next;
    next.scan = current.scan + 1;
    next.sensors = current.sensors;
    const double dt = motion.period_s;
    std::normal_distribution<double> n01;
    for (const auto& t : current.targets) {
        const auto spec = std::find_if(schedule.begin(), schedule.end(),
                                       [&](const TargetSpec& s) { return s.label == t.label; });
        if (spec != schedule.end() && next.scan >= spec->death_scan) continue;
        Vector x = motion.transition * t.state;
        if (process_noise && sigma_v_mps2 > 0.0) {
            // Acceleration noise enters through G = [dt^2/2 I; dt I], giving cov Q.
            const double ax = sigma_v_mps2 * n01(rng);
            const double ay = sigma_v_mps2 * n01(rng);
            x(0) += 0.5 * dt * dt * ax;
            x(1) += 0.5 * dt * dt * ay;
            x(2) += dt * ax;
            x(3) += dt * ay;
        }
        next.targets.push_back(LabeledState{t.label, x});
    }
    for (const auto& s : schedule)
        if (s.birth_scan == next.scan && next.scan < s.death_scan)
            next.targets.push_back(LabeledState{s.label, s.initial.to_vector()});
    std::sort(next.targets.begin(), next.targets.end(),
              [](const LabeledState& a, const LabeledState& b) { return a.label < b.label; });
    return next;
}

ScanMeasurements measure(std::span<const LabeledState> targets, const SensorModel& sensor, Rng& rng,
                         const MeasureOptions& options) {
    ScanMeasurements out;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> n01;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double d = sensor.distance_to(targets[i].state);
        if (options.missed_detections && u01(rng) >= sensor.detection_probability(d)) continue;
        Measurement z = sensor.ideal_measurement(targets[i].state);
        if (d == 0.0) z(0) = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);
        if (options.noise) {
            z(0) = wrap_angle(z(0) + sensor.bearing_noise_std(d) * n01(rng));
            z(1) += sensor.range_noise_std(d) * n01(rng);
        }
        out.z.push_back(z);
        out.origin.push_back(static_cast<int>(i));
    }
    if (options.clutter && sensor.clutter_rate > 0.0) {
        const auto count = std::poisson_distribution<int>(sensor.clutter_rate)(rng);
        const auto& r = sensor.region;
        std::uniform_real_distribution<double> ux(r.x_min, r.x_max);
        std::uniform_real_distribution<double> uy(r.y_min, r.y_max);
        for (int c = 0; c < count; ++c) {
            const double x = ux(rng);
            const double y = uy(rng);
            const double dx = x - sensor.position.x();
            const double dy = y - sensor.position.y();
            out.z.emplace_back(std::atan2(dy, dx), std::hypot(dx, dy));
            out.origin.push_back(-1);
        }
    }
    std::vector<std::size_t> order(out.z.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    ScanMeasurements shuffled;
    for (auto i : order) {
        shuffled.z.push_back(out.z[i]);
        shuffled.origin.push_back(out.origin[i]);
    }
    return shuffled;
}

void write_scan_log_header(std::ostream& os) { os << "run,scan,kind,sensor,label,a,b,c,d\n"; }

void write_scan_log(std::ostream& os, int run, const TruthFrame& frame, std::span<const ScanMeasurements> per_sensor) {
    for (const auto& t : frame.targets)
        os << run << ',' << frame.scan << ",truth,," << t.label.to_string() << ',' << fmt_double(t.state(0)) << ','
           << fmt_double(t.state(1)) << ',' << fmt_double(t.state(2)) << ',' << fmt_double(t.state(3)) << '\n';
    for (std::size_t s = 0; s < per_sensor.size(); ++s) {
        const auto& m = per_sensor[s];
        for (std::size_t i = 0; i < m.z.size(); ++i) {
            const bool clutter = m.origin[i] < 0;
            os << run << ',' << frame.scan << ',' << (clutter ? "clutter" : "meas") << ',' << s << ','
               << (clutter ? std::string() : frame.targets[static_cast<std::size_t>(m.origin[i])].label.to_string())
               << ',' << fmt_double(m.z[i](0)) << ',' << fmt_double(m.z[i](1)) << ",,\n";
        }
    }
}

}  // namespace lrfs
