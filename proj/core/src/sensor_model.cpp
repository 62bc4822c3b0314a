#include "lrfs/sensor_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lrfs {

bool SurveillanceRegion::contains(const Eigen::Vector2d& p) const {
    return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
}

double SurveillanceRegion::max_range_from(const Eigen::Vector2d& from) const {
    double r = 0.0;
    for (double x : {x_min, x_max})
        for (double y : {y_min, y_max}) r = std::max(r, (Eigen::Vector2d(x, y) - from).norm());
    return r;
}

double SensorModel::range_noise_std(double distance) const { return sigma0_m + eta_r_per_m * distance * distance; }

double SensorModel::bearing_noise_std(double distance) const { return theta0_rad + eta_theta_per_m * distance; }

double SensorModel::detection_probability(double distance) const {
    if (sigma_d_m <= 0.0) return distance == 0.0 ? 1.0 : 0.0;
    const double u = distance / sigma_d_m;
    return std::exp(-0.5 * u * u);
}

Eigen::Matrix2d SensorModel::noise_covariance(double distance) const {
    const double st = bearing_noise_std(distance);
    const double sr = range_noise_std(distance);
    return Eigen::Vector2d(st * st, sr * sr).asDiagonal();
}

double SensorModel::distance_to(const Vector& state) const {
    return std::hypot(state(0) - position.x(), state(1) - position.y());
}

Measurement SensorModel::ideal_measurement(const Vector& state) const {
    const double dx = state(0) - position.x();
    const double dy = state(1) - position.y();
    return {std::atan2(dy, dx), std::hypot(dx, dy)};
}

double SensorModel::clutter_intensity(const Measurement& z) const {
    return clutter_rate * std::max(z(1), 0.0) / region.area();
}

double wrap_angle(double radians) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(radians + std::numbers::pi, two_pi);
    if (a < 0.0) a += two_pi;
    return a - std::numbers::pi;
}

double wrap_degrees(double degrees) {
    double a = std::fmod(degrees, 360.0);
    if (a <= -180.0) a += 360.0;
    if (a > 180.0) a -= 360.0;
    return a;
}

SensorModel apply_action(SensorModel sensor, const ControlAction& action) {
    sensor.heading_deg = wrap_degrees(sensor.heading_deg + action.heading_change_deg);
    return sensor;
}

SensorModel advance(SensorModel sensor, double dt) {
    const double h = sensor.heading_deg * std::numbers::pi / 180.0;
    sensor.position += sensor.speed_mps * dt * Eigen::Vector2d(std::cos(h), std::sin(h));
    return sensor;
}

}  // namespace lrfs
