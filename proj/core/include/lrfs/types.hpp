#pragma once

#include "lrfs/gaussian.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lrfs {

/// Planar position/velocity. Filter vectors use the order [px, py, vx, vy]
/// so the constant-velocity model keeps its [[I, dt I], [0, I]] block form.
struct KinematicState {
    double px = 0.0;
    double vx = 0.0;
    double py = 0.0;
    double vy = 0.0;

    [[nodiscard]] Vector to_vector() const;
    [[nodiscard]] static KinematicState from_vector(const Vector& v);
    [[nodiscard]] bool finite() const;
    bool operator==(const KinematicState&) const = default;
};

/// Track label: (birth scan, index among that scan's births). Ordered
/// lexicographically, which is the canonical order used for every
/// serialized label set.
struct TrackLabel {
    int birth_time = 0;
    int birth_index = 0;

    auto operator<=>(const TrackLabel&) const = default;
    [[nodiscard]] std::string to_string() const;
};

/// Sorted, duplicate-free list of labels.
using LabelSet = std::vector<TrackLabel>;

[[nodiscard]] LabelSet make_label_set(std::vector<TrackLabel> labels);
[[nodiscard]] bool is_label_set(std::span<const TrackLabel> labels);
[[nodiscard]] std::string to_string(std::span<const TrackLabel> labels);

/// Spatial density p(x, l) of one track, a normalized Gaussian mixture.
struct LabeledGaussianMixture {
    TrackLabel label;
    std::vector<GaussianComponent> components;

    [[nodiscard]] double pdf(const Vector& x) const;
    [[nodiscard]] const GaussianComponent& dominant() const;
    [[nodiscard]] double total_weight() const;
};

/// One (I, xi) term of a delta-GLMB. `tracks[i]` indexes the owning
/// density's track table for `label_set[i]`; the tuple of track indices is the
/// association history xi.
struct GlmbHypothesis {
    LabelSet label_set;
    std::vector<std::size_t> tracks;
    double log_weight = 0.0;
};

/// Hypothesis-indexed labeled multi-target density. Weights are held as logs
/// and kept normalized (log-sum-exp of all hypotheses is 0).
struct DeltaGlmbDensity {
    std::vector<LabeledGaussianMixture> track_table;
    std::vector<GlmbHypothesis> hypotheses;

    /// Certain empty multi-target state.
    [[nodiscard]] static DeltaGlmbDensity empty_set();

    [[nodiscard]] double weight(std::size_t h) const;
    [[nodiscard]] const LabeledGaussianMixture& density(std::size_t h, std::size_t slot) const;
    [[nodiscard]] std::vector<double> cardinality_distribution() const;

    /// Shift log-weights so they sum to one in linear space.
    void normalize();
    /// Drop unreferenced track-table entries and remap indices.
    void compact();
    /// Throws InconsistentDensity on any invariant violation.
    void validate(double tolerance = 1e-9) const;
};

struct MDeltaGlmbEntry {
    LabelSet label_set;
    double log_weight = 0.0;
    /// One density per label, aligned with label_set.
    std::vector<LabeledGaussianMixture> densities;
};

/// Marginalized delta-GLMB: one weighted entry per label set, entries sorted
/// by label set.
struct MDeltaGlmbDensity {
    std::vector<MDeltaGlmbEntry> entries;

    [[nodiscard]] static MDeltaGlmbDensity empty_set();

    [[nodiscard]] double weight(std::size_t e) const;
    [[nodiscard]] std::vector<double> cardinality_distribution() const;
    [[nodiscard]] const MDeltaGlmbEntry* find(std::span<const TrackLabel> label_set) const;

    void normalize();
    /// Sort entries by label set.
    void canonicalize();
    void validate(double tolerance = 1e-9) const;
};

struct LmbTrack {
    double existence = 0.0;
    LabeledGaussianMixture density;
};

/// Labeled multi-Bernoulli density, tracks sorted by label.
struct LmbDensity {
    std::vector<LmbTrack> tracks;

    [[nodiscard]] const LmbTrack* find(const TrackLabel& label) const;
    void validate(double tolerance = 1e-9) const;
};

/// Element of a labeled multi-target state.
struct LabeledState {
    TrackLabel label;
    Vector state;
};

/// Generalized Kronecker delta: 1 if x == y, else 0. Set types compare as sets.
template <typename T>
[[nodiscard]] int kronecker_delta(const T& x, const T& y) {
    return x == y ? 1 : 0;
}

/// Per-label single-target function used by multi_target_exponential.
using LabeledFunction = std::map<TrackLabel, std::function<double(const Vector&)>>;

/// Product of f(x, l) over the elements of a labeled set; 1 for the empty set.
/// Throws InconsistentDensity when f has no entry for a label in the set.
[[nodiscard]] double multi_target_exponential(const LabeledFunction& f, std::span<const LabeledState> set);

/// Extracts the positions of a labeled state set.
[[nodiscard]] std::vector<Eigen::Vector2d> positions(std::span<const LabeledState> set);

}  // namespace lrfs
