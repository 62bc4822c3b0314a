#pragma once

#include "lrfs/gaussian.hpp"
#include "lrfs/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lrfs {

/// Per-sensor GCI exponents, each in (0, 1], summing to one.
struct FusionWeights {
    std::vector<double> omega;

    [[nodiscard]] static FusionWeights uniform(std::size_t n);
    /// Throws ConfigError on an invalid weight vector.
    void validate(std::size_t expected_size) const;
};

struct PowerProduct {
    LabeledGaussianMixture mixture;
    /// log of the integral of prod_i p_i(x)^omega_i.
    double log_integral = 0.0;
};

/// Normalized prod_i p_i^omega_i and its integral. Exact for single-Gaussian
/// inputs; mixtures are expanded over one-component-per-input tuples, each
/// tuple weighted by prod w^omega times its Gaussian power-product integral.
[[nodiscard]] PowerProduct weighted_gm_power_product(std::span<const LabeledGaussianMixture* const> mixtures,
                                                     const FusionWeights& weights,
                                                     const std::optional<MixtureReductionParams>& reduction = std::nullopt);

[[nodiscard]] PowerProduct weighted_gm_power_product(std::span<const LabeledGaussianMixture> mixtures,
                                                     const FusionWeights& weights,
                                                     const std::optional<MixtureReductionParams>& reduction = std::nullopt);

/// GCI fusion of M-delta-GLMB densities over the label sets present in every
/// input. Throws FusionFailure when no label set is shared.
[[nodiscard]] MDeltaGlmbDensity fuse_mdglmb(std::span<const MDeltaGlmbDensity> inputs, const FusionWeights& weights,
                                            const std::optional<MixtureReductionParams>& reduction = std::nullopt);

/// Pointer form, avoids copying densities held elsewhere.
[[nodiscard]] MDeltaGlmbDensity fuse_mdglmb(std::span<const MDeltaGlmbDensity* const> inputs,
                                            const FusionWeights& weights,
                                            const std::optional<MixtureReductionParams>& reduction = std::nullopt);

/// GCI fusion of LMB densities. Labels missing from any input are dropped.
[[nodiscard]] LmbDensity fuse_lmb(std::span<const LmbDensity> inputs, const FusionWeights& weights,
                                  const std::optional<MixtureReductionParams>& reduction = std::nullopt);

}  // namespace lrfs
