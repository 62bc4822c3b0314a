#pragma once

#include "lrfs/gaussian.hpp"
#include "lrfs/sensor_model.hpp"
#include "lrfs/types.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lrfs {

/// Linear-Gaussian single-target dynamics with constant survival probability.
struct MotionModel {
    Matrix transition;
    Matrix process_noise;
    double survival_probability = 0.98;
    double period_s = 1.0;

    /// Nearly-constant-velocity model on [px, py, vx, vy]:
    ///   F = [[I, dt I], [0, I]],
    ///   Q = sigma_v^2 [[dt^4/4 I, dt^3/2 I], [dt^3/2 I, dt^2 I]].
    [[nodiscard]] static MotionModel constant_velocity(double period_s, double sigma_v_mps2,
                                                       double survival_probability);
};

/// One labeled-Bernoulli birth component. The label is (scan, birth_index).
struct BirthTrack {
    int birth_index = 0;
    double existence = 0.03;
    std::vector<GaussianComponent> components;
};

/// LMB birth process shared by every sensor.
struct BirthModel {
    std::vector<BirthTrack> tracks;
};

enum class AssociationMode {
    /// Murty k-best assignments per predicted hypothesis.
    ranked,
    /// Every injective track-to-measurement map; reference path for small cases.
    exhaustive,
};

struct FilterParams {
    std::size_t max_hypotheses = 1000;
    double hypothesis_weight_floor = 1e-5;
    std::size_t max_components_per_track = 5;
    double merge_distance = 1.0;
    AssociationMode association = AssociationMode::ranked;

    [[nodiscard]] MixtureReductionParams reduction() const;
};

struct UpdateStats {
    /// Set when every association had zero weight and the update fell back to
    /// the missed-detection hypotheses.
    bool fell_back_to_missed = false;
    std::size_t assignments = 0;
};

/// Chapman-Kolmogorov step: survival subsets of each prior label set combined
/// with birth subsets. Births are labeled (scan, birth_index).
[[nodiscard]] DeltaGlmbDensity predict(const DeltaGlmbDensity& prior, const MotionModel& motion,
                                       const BirthModel& birth, const FilterParams& params, int scan);

/// Bayes update with a range-bearing measurement set.
[[nodiscard]] DeltaGlmbDensity update(const DeltaGlmbDensity& predicted, const MeasurementSet& measurements,
                                      const SensorModel& sensor, const FilterParams& params,
                                      UpdateStats* stats = nullptr);

/// Prune hypotheses below the weight floor, keep the max_hypotheses heaviest,
/// renormalize. Throws TruncationError when nothing survives.
[[nodiscard]] DeltaGlmbDensity truncate(DeltaGlmbDensity density, const FilterParams& params);

/// w(L) = sum over xi of w(L, xi); p(L) = weight-averaged track densities.
/// Mixtures are reduced only when `reduction` is given.
[[nodiscard]] MDeltaGlmbDensity marginalize_to_mdglmb(
    const DeltaGlmbDensity& density, const std::optional<MixtureReductionParams>& reduction = std::nullopt);

/// One hypothesis per label set, each carrying that entry's track densities.
[[nodiscard]] DeltaGlmbDensity to_delta_glmb(const MDeltaGlmbDensity& density);

/// r(l) = total weight of hypotheses containing l; p(l) = their weighted average.
[[nodiscard]] LmbDensity convert_to_lmb(const DeltaGlmbDensity& density,
                                        const std::optional<MixtureReductionParams>& reduction = std::nullopt);

/// MAP cardinality, then the heaviest entry of that cardinality (ties to the
/// lower label set), then each track's heaviest component mean.
[[nodiscard]] std::vector<LabeledState> map_estimate(const MDeltaGlmbDensity& density);

}  // namespace lrfs
