#include "lrfs/errors.hpp"
#include "lrfs/gaussian.hpp"

#include "util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace lrfs;
using lrfs::test::gauss1;

TEST(GaussianPairIntegral, CoincidentStandardNormals) {
    // 1 / (2 sqrt(pi)), scipy quad
    EXPECT_NEAR(gaussian_pair_integral(gauss1(0, 1), gauss1(0, 1)), 0.28209479177387825, 1e-14);
}

TEST(GaussianPairIntegral, MeansThreeApart) {
    // scipy quad of N(x;0,1) N(x;3,1)
    EXPECT_NEAR(gaussian_pair_integral(gauss1(0, 1), gauss1(3, 1)), 0.02973257230590735, 1e-14);
}

TEST(GaussianPairIntegral, WeightsScaleAndZeroWeightIsMinusInf) {
    EXPECT_NEAR(gaussian_pair_integral(gauss1(0, 1, 0.5), gauss1(0, 1, 0.4)), 0.2 * 0.28209479177387825, 1e-14);
    EXPECT_EQ(log_gaussian_pair_integral(gauss1(0, 1, 0.0), gauss1(0, 1)), -std::numeric_limits<double>::infinity());
}

TEST(GaussianPairIntegral, MixtureIsBilinear) {
    std::vector<GaussianComponent> a{gauss1(0, 1, 0.3), gauss1(2, 0.5, 0.7)};
    std::vector<GaussianComponent> b{gauss1(1, 2, 1.0)};
    const double expect = 0.3 * gaussian_pair_integral(gauss1(0, 1), gauss1(1, 2)) +
                          0.7 * gaussian_pair_integral(gauss1(2, 0.5), gauss1(1, 2));
    EXPECT_NEAR(std::exp(log_mixture_pair_integral(a, b)), expect, 1e-14);
}

TEST(LogSumExp, StableForLargeMagnitudes) {
    std::vector<double> v{-1000.0, -1000.0};
    EXPECT_NEAR(log_sum_exp(v), -1000.0 + std::log(2.0), 1e-12);
    EXPECT_EQ(log_sum_exp(std::vector<double>{}), -std::numeric_limits<double>::infinity());
}

TEST(RobustCholesky, JittersSingularAndRejectsNan) {
    Matrix p = Matrix::Ones(2, 2);
    EXPECT_NO_THROW((void)robust_cholesky(p));
    Matrix bad = Matrix::Constant(2, 2, std::nan(""));
    EXPECT_THROW((void)robust_cholesky(bad), NumericalError);
    EXPECT_THROW((void)robust_cholesky(Matrix(-Matrix::Identity(2, 2))), NumericalError);
}

TEST(ReduceMixture, MergesNearbyAndCapsCount) {
    std::vector<GaussianComponent> c{gauss1(0, 1, 0.5), gauss1(0.1, 1, 0.3), gauss1(50, 1, 0.1), gauss1(90, 1, 0.1)};
    MixtureReductionParams p;
    p.max_components = 2;
    const auto r = reduce_mixture(c, p);
    ASSERT_EQ(r.size(), 2u);
    double s = 0;
    for (const auto& x : r) s += x.weight;
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_NEAR(r[0].weight, 0.8 / 0.9, 1e-12);
    EXPECT_NEAR(r[0].mean(0), (0.5 * 0 + 0.3 * 0.1) / 0.8, 1e-12);
    EXPECT_GE(r[0].weight, r[1].weight);
}

TEST(ReduceMixture, ZeroWeightRejected) {
    std::vector<GaussianComponent> c{gauss1(0, 1, 0.0)};
    EXPECT_THROW(normalize_weights(c), InconsistentDensity);
}
