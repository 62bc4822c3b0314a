#include "lrfs/assignment.hpp"
#include "lrfs/oracles.hpp"
#include "lrfs/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <set>

using namespace lrfs;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

double cost_of(const Eigen::MatrixXd& c, const Assignment& a) {
    double s = 0;
    for (std::size_t r = 0; r < a.row_to_col.size(); ++r) s += c(static_cast<Eigen::Index>(r), a.row_to_col[r]);
    return s;
}
}  // namespace

TEST(Murty, SquareExampleEnumeratesAllPermutationsInOrder) {
    Eigen::MatrixXd c(3, 3);
    c << 4, 1, 3, 2, 0, 5, 3, 2, 2;
    const auto k = murty_k_best(c, 10);
    // itertools.permutations brute force
    const std::vector<double> expect{5, 6, 6, 7, 9, 11};
    ASSERT_EQ(k.size(), expect.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        EXPECT_DOUBLE_EQ(k[i].cost, expect[i]);
        EXPECT_DOUBLE_EQ(cost_of(c, k[i]), k[i].cost);
    }
}

TEST(Murty, RectangularWithForbiddenEntries) {
    Eigen::MatrixXd c(2, 4);
    c << 7, 2, inf, 4, 3, inf, 1, 6;
    const auto k = murty_k_best(c, 20);
    const std::vector<double> expect{3, 5, 5, 7, 8, 8, 13};
    ASSERT_EQ(k.size(), expect.size());
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_DOUBLE_EQ(k[i].cost, expect[i]);
    std::set<std::vector<int>> distinct;
    for (const auto& a : k) distinct.insert(a.row_to_col);
    EXPECT_EQ(distinct.size(), k.size());
}

TEST(Murty, InfeasibleReturnsNothing) {
    Eigen::MatrixXd c(2, 2);
    c << 1, inf, 2, inf;
    EXPECT_FALSE(solve_assignment(c).has_value());
    EXPECT_TRUE(murty_k_best(c, 3).empty());
}

TEST(Murty, EmptyRowsHaveOneZeroCostAssignment) {
    Eigen::MatrixXd c(0, 3);
    const auto k = murty_k_best(c, 5);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0].cost, 0.0);
}

TEST(Murty, RandomMatricesMatchBruteForce) {
    Rng rng(11);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::uniform_int_distribution<int> dim(1, 5);
    for (int t = 0; t < 200; ++t) {
        const int rows = dim(rng);
        const int cols = rows + std::uniform_int_distribution<int>(0, 2)(rng);
        Eigen::MatrixXd c(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) c(i, j) = u(rng) < 1.0 ? inf : u(rng);
        const double brute = oracle::brute_force_assignment_cost(c);
        const auto best = solve_assignment(c);
        if (!std::isfinite(brute)) {
            EXPECT_FALSE(best.has_value());
            continue;
        }
        ASSERT_TRUE(best.has_value());
        EXPECT_NEAR(best->cost, brute, 1e-9);
        const auto k = murty_k_best(c, 8);
        ASSERT_FALSE(k.empty());
        EXPECT_NEAR(k.front().cost, brute, 1e-9);
        for (std::size_t i = 1; i < k.size(); ++i) EXPECT_LE(k[i - 1].cost, k[i].cost + 1e-12);
    }
}
