#pragma once

#include <Eigen/Dense>

#include <span>

namespace lrfs {

struct OspaParams {
    double cutoff = 100.0;
    double order = 2.0;
};

/// OSPA distance between two finite point sets. 0 when both are empty.
/// Uses an exact subset DP when the smaller set has at most 8 points and the
/// Hungarian solver otherwise.
[[nodiscard]] double ospa(std::span<const Eigen::Vector2d> estimate, std::span<const Eigen::Vector2d> truth,
                          const OspaParams& params = {});

}  // namespace lrfs
