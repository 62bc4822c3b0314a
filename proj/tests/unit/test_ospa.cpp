#include "lrfs/oracles.hpp"
#include "lrfs/ospa.hpp"
#include "lrfs/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace lrfs;
using P = Eigen::Vector2d;

TEST(Ospa, HandExamples) {
    const std::vector<P> a{P(0, 0)}, b{P(3, 4)};
    EXPECT_NEAR(ospa(a, b, {100.0, 1.0}), 5.0, 1e-12);
    const std::vector<P> x{P(0, 0), P(10, 0)}, y{P(0, 1)};
    // sqrt((1 + 100^2) / 2)
    EXPECT_NEAR(ospa(x, y, {100.0, 2.0}), 70.71421356417676, 1e-10);
}

TEST(Ospa, EmptyAndCutoffBoundaries) {
    const std::vector<P> none, one{P(1, 1)};
    EXPECT_EQ(ospa(none, none), 0.0);
    EXPECT_NEAR(ospa(none, one, {100.0, 2.0}), 100.0, 1e-12);
    const std::vector<P> far{P(1000, 1000)};
    EXPECT_NEAR(ospa(one, far, {100.0, 2.0}), 100.0, 1e-12);
}

TEST(Ospa, MatchesBruteForceAndIsAMetric) {
    Rng rng(9);
    std::uniform_real_distribution<double> u(-150, 150);
    std::uniform_int_distribution<int> n(0, 6);
    auto draw = [&] {
        std::vector<P> s(static_cast<std::size_t>(n(rng)));
        for (auto& p : s) p = P(u(rng), u(rng));
        return s;
    };
    for (int t = 0; t < 300; ++t) {
        const auto x = draw(), y = draw(), z = draw();
        const double xy = ospa(x, y);
        EXPECT_NEAR(xy, oracle::brute_force_ospa(x, y, 100.0, 2.0), 1e-9);
        EXPECT_NEAR(xy, ospa(y, x), 1e-9);
        EXPECT_LE(xy, ospa(x, z) + ospa(z, y) + 1e-9);
        EXPECT_NEAR(ospa(x, x), 0.0, 1e-12);
        EXPECT_LE(xy, 100.0 + 1e-12);
    }
}

TEST(Ospa, HungarianPathForLargeSets) {
    Rng rng(10);
    std::uniform_real_distribution<double> u(-500, 500);
    std::vector<P> x(12), y(12);
    for (auto& p : x) p = P(u(rng), u(rng));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[(i + 5) % x.size()] + P(1.0, 0.0);
    EXPECT_NEAR(ospa(x, y), 1.0, 1e-9);
}
