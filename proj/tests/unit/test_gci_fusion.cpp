#include "lrfs/errors.hpp"
#include "lrfs/gci_fusion.hpp"
#include "lrfs/oracles.hpp"

#include "util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lrfs;
using namespace lrfs::test;

TEST(PowerProduct, InformationFormFor1D) {
    const std::vector<LabeledGaussianMixture> in{track(L1, {gauss1(0, 1)}), track(L1, {gauss1(2, 4)})};
    const auto pp = weighted_gm_power_product(in, FusionWeights::uniform(2));
    ASSERT_EQ(pp.mixture.components.size(), 1u);
    const auto& c = pp.mixture.components[0];
    // P = (0.5/1 + 0.5/4)^-1, m = P (0.5*0 + 0.5*2/4); integral by scipy quad
    EXPECT_NEAR(c.covariance(0, 0), 1.6, 1e-12);
    EXPECT_NEAR(c.mean(0), 0.4, 1e-12);
    EXPECT_NEAR(std::exp(pp.log_integral), 0.7322950476607851, 1e-12);
}

TEST(PowerProduct, FourDimensionalMatchesDirectInverse) {
    Rng rng(5);
    oracle::RandomDensitySpec spec;
    spec.dim = 4;
    spec.mean_range = 50;
    spec.std_min = 2;
    spec.std_max = 20;
    for (int t = 0; t < 20; ++t) {
        auto a = oracle::random_component(rng, spec);
        auto b = oracle::random_component(rng, spec);
        a.weight = b.weight = 1.0;
        const std::vector<LabeledGaussianMixture> in{track(L1, {a}), track(L1, {b})};
        const FusionWeights w{{0.3, 0.7}};
        const auto pp = weighted_gm_power_product(in, w);
        const Eigen::Matrix4d ia = Eigen::Matrix4d(a.covariance).inverse();
        const Eigen::Matrix4d ib = Eigen::Matrix4d(b.covariance).inverse();
        const Eigen::Matrix4d p = (0.3 * ia + 0.7 * ib).inverse();
        const Eigen::Vector4d m = p * (0.3 * ia * Eigen::Vector4d(a.mean) + 0.7 * ib * Eigen::Vector4d(b.mean));
        const auto& c = pp.mixture.components.at(0);
        EXPECT_LT((Eigen::Vector4d(c.mean) - m).norm(), 1e-8 * (1 + m.norm()));
        EXPECT_LT((Eigen::Matrix4d(c.covariance) - p).norm(), 1e-8 * p.norm());
    }
}

TEST(FuseMdglmb, LabelSetWeightsFollowGeometricMean) {
    const auto a = mdglmb({entry({track(L1, {gauss1(0, 1)})}, 0.8), entry({track(L2, {gauss1(0, 1)})}, 0.2)});
    const auto b = mdglmb({entry({track(L1, {gauss1(0, 1)})}, 0.6), entry({track(L2, {gauss1(0, 1)})}, 0.4)});
    const auto f = fuse_mdglmb(std::vector{a, b}, FusionWeights::uniform(2));
    ASSERT_EQ(f.entries.size(), 2u);
    // sqrt(.48) / (sqrt(.48) + sqrt(.08))
    EXPECT_NEAR(std::exp(f.find(LabelSet{L1})->log_weight), 0.7101020514433644, 1e-12);
    f.validate();
}

TEST(FuseMdglmb, IdempotentOnIdenticalInputs) {
    const auto a = mdglmb({entry({track(L1, {gauss1(1, 2)})}, 0.3), entry({track(L1, {gauss1(-1, 1)}),
                                                                             track(L2, {gauss1(4, 3)})},
                                                                            0.7)});
    for (std::size_t n : {1u, 2u, 3u}) {
        const auto f = fuse_mdglmb(std::vector<MDeltaGlmbDensity>(n, a), FusionWeights::uniform(n));
        ASSERT_EQ(f.entries.size(), a.entries.size());
        for (std::size_t e = 0; e < f.entries.size(); ++e) {
            EXPECT_NEAR(f.entries[e].log_weight, a.entries[e].log_weight, 1e-12);
            for (std::size_t s = 0; s < f.entries[e].densities.size(); ++s) {
                const auto& x = f.entries[e].densities[s].components.at(0);
                const auto& y = a.entries[e].densities[s].components.at(0);
                EXPECT_NEAR(x.mean(0), y.mean(0), 1e-12);
                EXPECT_NEAR(x.covariance(0, 0), y.covariance(0, 0), 1e-12);
            }
        }
    }
}

TEST(FuseMdglmb, PermutationEquivariant) {
    const auto a = mdglmb({entry({track(L1, {gauss1(0, 1)})}, 0.5), entry({}, 0.5)});
    const auto b = mdglmb({entry({track(L1, {gauss1(1, 2)})}, 0.9), entry({}, 0.1)});
    const auto f1 = fuse_mdglmb(std::vector{a, b}, FusionWeights{{0.3, 0.7}});
    const auto f2 = fuse_mdglmb(std::vector{b, a}, FusionWeights{{0.7, 0.3}});
    ASSERT_EQ(f1.entries.size(), f2.entries.size());
    for (std::size_t e = 0; e < f1.entries.size(); ++e) EXPECT_NEAR(f1.entries[e].log_weight, f2.entries[e].log_weight, 1e-12);
}

TEST(FuseMdglmb, DisjointInputsThrow) {
    const auto a = mdglmb({entry({track(L1, {gauss1(0, 1)})}, 1.0)});
    const auto b = mdglmb({entry({track(L2, {gauss1(0, 1)})}, 1.0)});
    EXPECT_THROW((void)fuse_mdglmb(std::vector{a, b}, FusionWeights::uniform(2)), FusionFailure);
    EXPECT_THROW((void)fuse_mdglmb(std::vector{a, b}, FusionWeights{{0.6, 0.6}}), ConfigError);
}

TEST(FuseLmb, ExistenceOfIdenticalHalfTracks) {
    LmbDensity a;
    a.tracks.push_back(LmbTrack{0.5, track(L1, {gauss1(0, 1)})});
    const auto f = fuse_lmb(std::vector{a, a}, FusionWeights::uniform(2));
    ASSERT_EQ(f.tracks.size(), 1u);
    EXPECT_NEAR(f.tracks[0].existence, 0.5, 1e-12);
    const auto single = fuse_lmb(std::vector{a}, FusionWeights::uniform(1));
    EXPECT_NEAR(single.tracks[0].existence, 0.5, 1e-12);
    EXPECT_NEAR(single.tracks[0].density.components[0].mean(0), 0.0, 1e-12);
}

TEST(PowerProduct, MixtureApproximationNearQuadrature) {
    const auto a = track(L1, {gauss1(-3, 1, 0.5), gauss1(3, 1, 0.5)});
    const auto b = track(L1, {gauss1(-2.5, 1.1, 0.4), gauss1(3.5, 0.9, 0.6)});
    const std::vector<LabeledGaussianMixture> in{a, b};
    const auto pp = weighted_gm_power_product(in, FusionWeights::uniform(2));
    const auto f = [&](double x) { return std::sqrt(a.pdf(vec({x})) * b.pdf(vec({x}))); };
    const double z = oracle::trapezoid(f, -20, 20, 8000);
    EXPECT_NEAR(std::exp(pp.log_integral), z, 0.05 * z);
}
