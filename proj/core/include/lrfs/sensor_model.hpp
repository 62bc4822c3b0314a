#pragma once

#include "lrfs/gaussian.hpp"

#include <Eigen/Dense>

#include <vector>

namespace lrfs {

/// Polar measurement (bearing [rad], range [m]).
using Measurement = Eigen::Vector2d;
using MeasurementSet = std::vector<Measurement>;

/// Axis-aligned rectangle in metres.
struct SurveillanceRegion {
    double x_min = -2000.0;
    double x_max = 2000.0;
    double y_min = -2000.0;
    double y_max = 2000.0;

    [[nodiscard]] double area() const { return (x_max - x_min) * (y_max - y_min); }
    [[nodiscard]] bool contains(const Eigen::Vector2d& p) const;
    /// Largest distance from `from` to any corner of the region.
    [[nodiscard]] double max_range_from(const Eigen::Vector2d& from) const;
};

/// A heading change commanded at a decision time.
struct ControlAction {
    double heading_change_deg = 0.0;
    bool operator==(const ControlAction&) const = default;
};

/// Range-bearing sensor on a moving platform. Noise and detection degrade
/// with the distance d between target and sensor:
///   sigma_r = sigma0 + eta_r d^2,  sigma_theta = theta0 + eta_theta d,
///   P_D = N(d; 0, sigma_D) / N(0; 0, sigma_D) = exp(-d^2 / (2 sigma_D^2)).
struct SensorModel {
    Eigen::Vector2d position = Eigen::Vector2d::Zero();
    /// Heading in degrees, counter-clockwise from +x, kept in (-180, 180].
    double heading_deg = 0.0;
    double speed_mps = 0.0;

    double sigma0_m = 10.0;
    double eta_r_per_m = 5e-5;
    double theta0_rad = 0.017453292519943295;
    double eta_theta_per_m = 5e-6;
    double sigma_d_m = 10000.0;
    double clutter_rate = 25.0;
    SurveillanceRegion region;

    [[nodiscard]] double range_noise_std(double distance) const;
    [[nodiscard]] double bearing_noise_std(double distance) const;
    [[nodiscard]] double detection_probability(double distance) const;
    /// diag(sigma_theta^2, sigma_r^2) at the given distance.
    [[nodiscard]] Eigen::Matrix2d noise_covariance(double distance) const;

    [[nodiscard]] double distance_to(const Vector& state) const;
    /// Noise-free (bearing, range) of a [px, py, vx, vy] state.
    [[nodiscard]] Measurement ideal_measurement(const Vector& state) const;

    /// Clutter intensity kappa(z) in (bearing, range) coordinates for clutter
    /// uniform over the surveillance region: clutter_rate * range / area.
    /// Points outside the region get the same law rather than zero, so a
    /// noisy target return near the border cannot dominate the association.
    [[nodiscard]] double clutter_intensity(const Measurement& z) const;
};

/// Wraps an angle in radians to [-pi, pi).
[[nodiscard]] double wrap_angle(double radians);
/// Wraps an angle in degrees to (-180, 180].
[[nodiscard]] double wrap_degrees(double degrees);

/// Heading incremented by the action angle; speed and position unchanged.
[[nodiscard]] SensorModel apply_action(SensorModel sensor, const ControlAction& action);

/// Constant-velocity platform motion over dt seconds along the current heading.
[[nodiscard]] SensorModel advance(SensorModel sensor, double dt);

}  // namespace lrfs
