#include "lrfs/types.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lrfs {

Vector KinematicState::to_vector() const {
    Vector v(4);
    v << px, py, vx, vy;
    return v;
}

KinematicState KinematicState::from_vector(const Vector& v) {
    if (v.size() != 4) throw InconsistentDensity("kinematic state must be 4-dimensional");
    return {v(0), v(2), v(1), v(3)};
}

bool KinematicState::finite() const {
    return std::isfinite(px) && std::isfinite(vx) && std::isfinite(py) && std::isfinite(vy);
}

std::string TrackLabel::to_string() const {
    return std::to_string(birth_time) + ":" + std::to_string(birth_index);
}

LabelSet make_label_set(std::vector<TrackLabel> labels) {
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw InconsistentDensity("label set repeats a label");
    return labels;
}

bool is_label_set(std::span<const TrackLabel> labels) {
    return std::adjacent_find(labels.begin(), labels.end(), std::greater_equal<>()) == labels.end();
}

std::string to_string(std::span<const TrackLabel> labels) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i].to_string();
    os << '}';
    return os.str();
}

double LabeledGaussianMixture::pdf(const Vector& x) const {
    double s = 0.0;
    for (const auto& c : components) s += c.weight * std::exp(log_gaussian(x, c.mean, c.covariance));
    return s;
}

const GaussianComponent& LabeledGaussianMixture::dominant() const {
    if (components.empty()) throw InconsistentDensity("track " + label.to_string() + " has no components");
    return *std::max_element(components.begin(), components.end(),
                             [](const auto& a, const auto& b) { return a.weight < b.weight; });
}

double LabeledGaussianMixture::total_weight() const {
    double s = 0.0;
    for (const auto& c : components) s += c.weight;
    return s;
}

namespace {

void validate_mixture(const LabeledGaussianMixture& m, double tolerance) {
    if (m.components.empty()) throw InconsistentDensity("track " + m.label.to_string() + " has no components");
    for (const auto& c : m.components) {
        if (!(c.weight >= 0.0)) throw InconsistentDensity("negative component weight");
        if (c.mean.size() != c.covariance.rows() || c.covariance.rows() != c.covariance.cols())
            throw InconsistentDensity("component dimension mismatch");
        const double scale = std::max(1.0, c.covariance.cwiseAbs().maxCoeff());
        if ((c.covariance - c.covariance.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
            throw InconsistentDensity("covariance is not symmetric");
    }
    if (std::abs(m.total_weight() - 1.0) > tolerance)
        throw InconsistentDensity("track " + m.label.to_string() + " mixture is not normalized");
}

template <typename Range, typename LogWeightOf>
void normalize_log_weights(Range& items, LogWeightOf&& lw) {
    std::vector<double> logs;
    logs.reserve(items.size());
    for (auto& it : items) logs.push_back(lw(it));
    const double z = log_sum_exp(logs);
    if (!std::isfinite(z)) throw InconsistentDensity("density has no positive finite weight");
    for (auto& it : items) lw(it) -= z;
}

}  // namespace

DeltaGlmbDensity DeltaGlmbDensity::empty_set() {
    DeltaGlmbDensity d;
    d.hypotheses.push_back(GlmbHypothesis{{}, {}, 0.0});
    return d;
}

double DeltaGlmbDensity::weight(std::size_t h) const { return std::exp(hypotheses.at(h).log_weight); }

const LabeledGaussianMixture& DeltaGlmbDensity::density(std::size_t h, std::size_t slot) const {
    return track_table.at(hypotheses.at(h).tracks.at(slot));
}

std::vector<double> DeltaGlmbDensity::cardinality_distribution() const {
    std::vector<double> card;
    for (std::size_t h = 0; h < hypotheses.size(); ++h) {
        const auto n = hypotheses[h].label_set.size();
        if (card.size() <= n) card.resize(n + 1, 0.0);
        card[n] += weight(h);
    }
    return card;
}

void DeltaGlmbDensity::normalize() {
    normalize_log_weights(hypotheses, [](GlmbHypothesis& h) -> double& { return h.log_weight; });
}

void DeltaGlmbDensity::compact() {
    std::vector<std::size_t> remap(track_table.size(), SIZE_MAX);
    std::vector<LabeledGaussianMixture> kept;
    for (auto& h : hypotheses) {
        for (auto& t : h.tracks) {
            if (remap[t] == SIZE_MAX) {
                remap[t] = kept.size();
                kept.push_back(std::move(track_table[t]));
            }
            t = remap[t];
        }
    }
    track_table = std::move(kept);
}

void DeltaGlmbDensity::validate(double tolerance) const {
    if (hypotheses.empty()) throw InconsistentDensity("delta-GLMB has no hypotheses");
    double total = 0.0;
    for (std::size_t h = 0; h < hypotheses.size(); ++h) {
        const auto& hyp = hypotheses[h];
        if (!is_label_set(hyp.label_set)) throw InconsistentDensity("hypothesis label set not sorted/distinct");
        if (hyp.tracks.size() != hyp.label_set.size())
            throw InconsistentDensity("hypothesis track list does not cover its label set");
        for (std::size_t s = 0; s < hyp.tracks.size(); ++s) {
            if (hyp.tracks[s] >= track_table.size()) throw InconsistentDensity("dangling track index");
            if (track_table[hyp.tracks[s]].label != hyp.label_set[s])
                throw InconsistentDensity("track table label mismatch");
        }
        total += weight(h);
    }
    if (std::abs(total - 1.0) > tolerance) throw InconsistentDensity("hypothesis weights do not sum to one");
    for (const auto& t : track_table) validate_mixture(t, tolerance);
}

MDeltaGlmbDensity MDeltaGlmbDensity::empty_set() {
    MDeltaGlmbDensity d;
    d.entries.push_back(MDeltaGlmbEntry{{}, 0.0, {}});
    return d;
}

double MDeltaGlmbDensity::weight(std::size_t e) const { return std::exp(entries.at(e).log_weight); }

std::vector<double> MDeltaGlmbDensity::cardinality_distribution() const {
    std::vector<double> card;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const auto n = entries[e].label_set.size();
        if (card.size() <= n) card.resize(n + 1, 0.0);
        card[n] += weight(e);
    }
    return card;
}

const MDeltaGlmbEntry* MDeltaGlmbDensity::find(std::span<const TrackLabel> label_set) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), label_set, [](const MDeltaGlmbEntry& e, auto key) {
        return std::lexicographical_compare(e.label_set.begin(), e.label_set.end(), key.begin(), key.end());
    });
    if (it != entries.end() && std::equal(it->label_set.begin(), it->label_set.end(), label_set.begin(),
                                          label_set.end()))
        return &*it;
    return nullptr;
}

void MDeltaGlmbDensity::normalize() {
    normalize_log_weights(entries, [](MDeltaGlmbEntry& e) -> double& { return e.log_weight; });
}

void MDeltaGlmbDensity::canonicalize() {
    std::sort(entries.begin(), entries.end(),
              [](const MDeltaGlmbEntry& a, const MDeltaGlmbEntry& b) { return a.label_set < b.label_set; });
}

void MDeltaGlmbDensity::validate(double tolerance) const {
    if (entries.empty()) throw InconsistentDensity("M-delta-GLMB has no entries");
    double total = 0.0;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const auto& entry = entries[e];
        if (!is_label_set(entry.label_set)) throw InconsistentDensity("entry label set not sorted/distinct");
        if (e > 0 && !(entries[e - 1].label_set < entry.label_set))
            throw InconsistentDensity("entries not sorted or duplicated");
        if (entry.densities.size() != entry.label_set.size())
            throw InconsistentDensity("entry density map does not cover its label set");
        for (std::size_t s = 0; s < entry.densities.size(); ++s) {
            if (entry.densities[s].label != entry.label_set[s]) throw InconsistentDensity("entry label mismatch");
            validate_mixture(entry.densities[s], tolerance);
        }
        total += weight(e);
    }
    if (std::abs(total - 1.0) > tolerance) throw InconsistentDensity("entry weights do not sum to one");
}

const LmbTrack* LmbDensity::find(const TrackLabel& label) const {
    auto it = std::lower_bound(tracks.begin(), tracks.end(), label,
                               [](const LmbTrack& t, const TrackLabel& l) { return t.density.label < l; });
    if (it != tracks.end() && it->density.label == label) return &*it;
    return nullptr;
}

void LmbDensity::validate(double tolerance) const {
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        const auto& t = tracks[i];
        if (!(t.existence >= 0.0 && t.existence <= 1.0 + tolerance))
            throw InconsistentDensity("existence probability outside [0, 1]");
        if (i > 0 && !(tracks[i - 1].density.label < t.density.label))
            throw InconsistentDensity("LMB tracks not sorted or duplicated");
        validate_mixture(t.density, tolerance);
    }
}

double multi_target_exponential(const LabeledFunction& f, std::span<const LabeledState> set) {
    double product = 1.0;
    for (const auto& x : set) {
        auto it = f.find(x.label);
        if (it == f.end()) throw InconsistentDensity("no single-target function for label " + x.label.to_string());
        product *= it->second(x.state);
    }
    return product;
}

std::vector<Eigen::Vector2d> positions(std::span<const LabeledState> set) {
    std::vector<Eigen::Vector2d> out;
    out.reserve(set.size());
    for (const auto& x : set) out.emplace_back(x.state(0), x.state(1));
    return out;
}

}  // namespace lrfs
