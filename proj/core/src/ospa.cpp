#include "lrfs/ospa.hpp"

#include "lrfs/assignment.hpp"
#include "lrfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace lrfs {

namespace {

/// Min-cost matching of every row of an m x n matrix (m <= n, m <= 8) by DP
/// over subsets of rows, scanning columns one at a time.
double subset_dp(const Eigen::MatrixXd& c) {
    const auto m = static_cast<std::size_t>(c.rows());
    const auto n = static_cast<std::size_t>(c.cols());
    const std::size_t full = std::size_t{1} << m;
    std::vector<double> best(full, std::numeric_limits<double>::infinity());
    best[0] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> next = best;
        for (std::size_t mask = 0; mask < full; ++mask) {
            if (!std::isfinite(best[mask])) continue;
            for (std::size_t i = 0; i < m; ++i) {
                if (mask & (std::size_t{1} << i)) continue;
                const auto to = mask | (std::size_t{1} << i);
                next[to] = std::min(next[to], best[mask] + c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            }
        }
        best = std::move(next);
    }
    return best[full - 1];
}

}  // namespace

double ospa(std::span<const Eigen::Vector2d> estimate, std::span<const Eigen::Vector2d> truth,
            const OspaParams& params) {
    if (!(params.cutoff > 0.0) || params.order < 1.0) throw ConfigError("OSPA needs cutoff > 0 and order >= 1");
    auto x = estimate;
    auto y = truth;
    if (x.size() > y.size()) std::swap(x, y);
    const std::size_t m = x.size();
    const std::size_t n = y.size();
    if (n == 0) return 0.0;

    double loc = 0.0;
    if (m > 0) {
        Eigen::MatrixXd c(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    std::pow(std::min(params.cutoff, (x[i] - y[j]).norm()), params.order);
        if (m <= 8) {
            loc = subset_dp(c);
        } else {
            const auto a = solve_assignment(c);
            if (!a) throw NumericalError("OSPA assignment failed");
            loc = a->cost;
        }
    }
    const double card = std::pow(params.cutoff, params.order) * static_cast<double>(n - m);
    return std::pow((loc + card) / static_cast<double>(n), 1.0 / params.order);
}

}  // namespace lrfs
