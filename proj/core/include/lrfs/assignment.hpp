#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace lrfs {

/// Rows assigned to distinct columns. `row_to_col[r]` is the column of row r.
struct Assignment {
    std::vector<int> row_to_col;
    double cost = 0.0;
};

/// Minimum-cost assignment of every row to a distinct column (rows <= cols).
/// Entries equal to +inf are forbidden. Returns nullopt when no finite
/// assignment exists.
[[nodiscard]] std::optional<Assignment> solve_assignment(const Eigen::MatrixXd& cost);

/// The k lowest-cost assignments in non-decreasing cost order (Murty's
/// partitioning). Fewer than k are returned when the feasible set is smaller.
[[nodiscard]] std::vector<Assignment> murty_k_best(const Eigen::MatrixXd& cost, std::size_t k);

}  // namespace lrfs
