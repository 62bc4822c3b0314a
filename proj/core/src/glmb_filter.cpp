#include "lrfs/glmb_filter.hpp"

#include "lrfs/assignment.hpp"
#include "lrfs/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace lrfs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinClutterIntensity = 1e-100;

// Unscented transform parameters for the range-bearing update.
constexpr double kUtAlpha = 1e-3;
constexpr double kUtBeta = 2.0;
constexpr double kUtKappa = 0.0;

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

using CrossCov = Eigen::Matrix<double, Eigen::Dynamic, 2, 0, kMaxStateDim, 2>;

/// Per-component quantities of the unscented update; shared by every
/// measurement tested against the component.
struct ComponentInnovation {
    double log_weight = 0.0;
    double log_pd = 0.0;
    double log_miss = 0.0;
    Measurement z_pred;
    Eigen::Matrix2d s_inv;
    double log_norm = 0.0;
    CrossCov gain;
    Matrix posterior_cov;
};

ComponentInnovation unscented_innovation(const GaussianComponent& c, const SensorModel& sensor) {
    const auto n = static_cast<int>(c.mean.size());
    const double lambda = kUtAlpha * kUtAlpha * (n + kUtKappa) - n;
    const double spread = std::sqrt(n + lambda);
    const double wi = 1.0 / (2.0 * (n + lambda));

    const auto llt = robust_cholesky(c.covariance);
    const Matrix l = llt.matrixL();
    const Measurement z0 = sensor.ideal_measurement(c.mean);

    std::array<Vector, 2 * kMaxStateDim> dx;
    std::array<Measurement, 2 * kMaxStateDim> dz;
    Measurement delta = Measurement::Zero();
    for (int i = 0; i < n; ++i) {
        for (int sgn = 0; sgn < 2; ++sgn) {
            const int k = 2 * i + sgn;
            dx[k] = (sgn == 0 ? spread : -spread) * l.col(i);
            Measurement zi = sensor.ideal_measurement(c.mean + dx[k]) - z0;
            zi(0) = wrap_angle(zi(0));
            dz[k] = zi;
            delta += wi * zi;
        }
    }

    // Expanded around the centre point so the large negative centre weight
    // of a small-alpha transform never multiplies absolute measurements.
    Eigen::Matrix2d s = (kUtBeta - kUtAlpha * kUtAlpha) * delta * delta.transpose();
    CrossCov pxz = CrossCov::Zero(n, 2);
    for (int k = 0; k < 2 * n; ++k) {
        s += wi * dz[k] * dz[k].transpose();
        pxz += wi * dx[k] * dz[k].transpose();
    }
    const double d = sensor.distance_to(c.mean);
    s += sensor.noise_covariance(d);
    s = 0.5 * (s + s.transpose());

    Eigen::LLT<Eigen::Matrix2d> sllt(s);
    if (sllt.info() != Eigen::Success) {
        s.diagonal().array() += 1e-9 * s.trace() / 2.0;
        sllt.compute(s);
        if (sllt.info() != Eigen::Success) throw NumericalError("innovation covariance not positive definite");
    }

    ComponentInnovation out;
    out.log_weight = safe_log(c.weight);
    const double pd = sensor.detection_probability(d);
    out.log_pd = safe_log(pd);
    out.log_miss = safe_log(1.0 - pd);
    out.z_pred = z0 + delta;
    out.z_pred(0) = wrap_angle(out.z_pred(0));
    out.s_inv = sllt.solve(Eigen::Matrix2d::Identity());
    const auto& sl = sllt.matrixL();
    out.log_norm = -std::log(2.0 * std::numbers::pi) - std::log(sl(0, 0)) - std::log(sl(1, 1));
    out.gain = pxz * out.s_inv;
    out.posterior_cov = symmetrize(c.covariance - out.gain * s * out.gain.transpose());
    return out;
}

Measurement innovation(const ComponentInnovation& ci, const Measurement& z) {
    Measurement nu = z - ci.z_pred;
    nu(0) = wrap_angle(nu(0));
    return nu;
}

/// Likelihood bookkeeping for one predicted track against the scan.
struct TrackLikelihood {
    std::vector<ComponentInnovation> comps;
    double log_missed = kNegInf;
    /// log eta(i) = log sum_c w_c P_D g(z_i | c) - log kappa, one per measurement.
    std::vector<double> log_detect;
};

TrackLikelihood track_likelihood(const LabeledGaussianMixture& track, const MeasurementSet& z,
                                 const SensorModel& sensor, std::span<const double> log_kappa) {
    TrackLikelihood tl;
    tl.comps.reserve(track.components.size());
    for (const auto& c : track.components) {
        tl.comps.push_back(unscented_innovation(c, sensor));
        tl.log_missed = log_add(tl.log_missed, tl.comps.back().log_weight + tl.comps.back().log_miss);
    }
    tl.log_detect.assign(z.size(), kNegInf);
    for (std::size_t i = 0; i < z.size(); ++i) {
        double acc = kNegInf;
        for (const auto& ci : tl.comps) {
            const Measurement nu = innovation(ci, z[i]);
            const double lq = ci.log_norm - 0.5 * nu.dot(ci.s_inv * nu);
            acc = log_add(acc, ci.log_weight + ci.log_pd + lq);
        }
        tl.log_detect[i] = acc - log_kappa[i];
    }
    return tl;
}

LabeledGaussianMixture detected_track(const LabeledGaussianMixture& prior, const TrackLikelihood& tl,
                                      const Measurement& z, const MixtureReductionParams& reduction) {
    LabeledGaussianMixture out{prior.label, {}};
    std::vector<double> logs;
    for (std::size_t c = 0; c < prior.components.size(); ++c) {
        const auto& ci = tl.comps[c];
        const Measurement nu = innovation(ci, z);
        const double lw = ci.log_weight + ci.log_pd + ci.log_norm - 0.5 * nu.dot(ci.s_inv * nu);
        logs.push_back(lw);
        GaussianComponent g;
        g.mean = prior.components[c].mean + ci.gain * nu;
        g.covariance = ci.posterior_cov;
        out.components.push_back(std::move(g));
    }
    const double z_log = log_sum_exp(logs);
    for (std::size_t c = 0; c < logs.size(); ++c) out.components[c].weight = std::exp(logs[c] - z_log);
    out.components = reduce_mixture(std::move(out.components), reduction);
    return out;
}

LabeledGaussianMixture missed_track(const LabeledGaussianMixture& prior, const TrackLikelihood& tl) {
    LabeledGaussianMixture out = prior;
    for (std::size_t c = 0; c < out.components.size(); ++c)
        out.components[c].weight = std::exp(tl.comps[c].log_weight + tl.comps[c].log_miss - tl.log_missed);
    return out;
}

/// Enumerates every injective partial map of tracks to measurements; -1 marks
/// a missed detection.
void enumerate_associations(std::size_t track, std::size_t num_tracks, std::size_t num_meas,
                            std::vector<int>& current, std::vector<char>& used,
                            std::vector<std::vector<int>>& out) {
    if (track == num_tracks) {
        out.push_back(current);
        return;
    }
    current[track] = -1;
    enumerate_associations(track + 1, num_tracks, num_meas, current, used, out);
    for (std::size_t i = 0; i < num_meas; ++i) {
        if (used[i]) continue;
        used[i] = 1;
        current[track] = static_cast<int>(i);
        enumerate_associations(track + 1, num_tracks, num_meas, current, used, out);
        used[i] = 0;
    }
}

void enumerate_survivors(const GlmbHypothesis& hyp, std::size_t slot, double log_w, double log_ps,
                         double log_qs, double log_floor, std::vector<std::size_t>& kept,
                         std::vector<std::pair<std::vector<std::size_t>, double>>& out) {
    if (log_w == kNegInf) return;
    const auto remaining = static_cast<double>(hyp.tracks.size() - slot);
    if (log_w + remaining * std::max(log_ps, log_qs) < log_floor) return;
    if (slot == hyp.tracks.size()) {
        out.emplace_back(kept, log_w);
        return;
    }
    kept.push_back(slot);
    enumerate_survivors(hyp, slot + 1, log_w + log_ps, log_ps, log_qs, log_floor, kept, out);
    kept.pop_back();
    enumerate_survivors(hyp, slot + 1, log_w + log_qs, log_ps, log_qs, log_floor, kept, out);
}

DeltaGlmbDensity finish(DeltaGlmbDensity d, const FilterParams& params) {
    d.normalize();
    return truncate(std::move(d), params);
}

}  // namespace

MotionModel MotionModel::constant_velocity(double period_s, double sigma_v_mps2, double survival_probability) {
    MotionModel m;
    m.period_s = period_s;
    m.survival_probability = survival_probability;
    const double dt = period_s;
    const Eigen::Matrix2d i2 = Eigen::Matrix2d::Identity();
    m.transition = Matrix::Identity(4, 4);
    m.transition.topRightCorner(2, 2) = dt * i2;
    const double q = sigma_v_mps2 * sigma_v_mps2;
    m.process_noise = Matrix::Zero(4, 4);
    m.process_noise.topLeftCorner(2, 2) = q * std::pow(dt, 4) / 4.0 * i2;
    m.process_noise.topRightCorner(2, 2) = q * std::pow(dt, 3) / 2.0 * i2;
    m.process_noise.bottomLeftCorner(2, 2) = q * std::pow(dt, 3) / 2.0 * i2;
    m.process_noise.bottomRightCorner(2, 2) = q * dt * dt * i2;
    return m;
}

MixtureReductionParams FilterParams::reduction() const {
    MixtureReductionParams r;
    r.merge_distance = merge_distance;
    r.max_components = max_components_per_track;
    return r;
}

DeltaGlmbDensity truncate(DeltaGlmbDensity density, const FilterParams& params) {
    density.normalize();
    auto& hyps = density.hypotheses;
    std::stable_sort(hyps.begin(), hyps.end(),
                     [](const GlmbHypothesis& a, const GlmbHypothesis& b) { return a.log_weight > b.log_weight; });
    const double log_floor = params.hypothesis_weight_floor > 0.0 ? std::log(params.hypothesis_weight_floor) : kNegInf;
    std::erase_if(hyps, [&](const GlmbHypothesis& h) { return h.log_weight < log_floor || h.log_weight == kNegInf; });
    if (hyps.size() > params.max_hypotheses) hyps.resize(params.max_hypotheses);
    if (hyps.empty()) throw TruncationError("hypothesis weight floor removed every hypothesis");
    density.normalize();
    density.compact();
    return density;
}

DeltaGlmbDensity predict(const DeltaGlmbDensity& prior, const MotionModel& motion, const BirthModel& birth,
                         const FilterParams& params, int scan) {
    DeltaGlmbDensity out;
    out.track_table.reserve(prior.track_table.size() + birth.tracks.size());
    for (const auto& t : prior.track_table) {
        LabeledGaussianMixture p = t;
        for (auto& c : p.components) kalman_predict(c, motion.transition, motion.process_noise);
        out.track_table.push_back(std::move(p));
    }

    struct BirthSubset {
        std::vector<std::size_t> members;
        double log_weight = 0.0;
    };
    const std::size_t first_birth = out.track_table.size();
    for (const auto& b : birth.tracks) {
        LabeledGaussianMixture m{TrackLabel{scan, b.birth_index}, b.components};
        normalize_weights(m.components);
        out.track_table.push_back(std::move(m));
    }
    const std::size_t nb = birth.tracks.size();
    if (nb > 20) throw InconsistentDensity("birth model too large to enumerate");
    std::vector<BirthSubset> births;
    for (std::size_t mask = 0; mask < (std::size_t{1} << nb); ++mask) {
        BirthSubset s;
        for (std::size_t b = 0; b < nb; ++b) {
            const double r = birth.tracks[b].existence;
            if (mask & (std::size_t{1} << b)) {
                s.members.push_back(first_birth + b);
                s.log_weight += safe_log(r);
            } else {
                s.log_weight += safe_log(1.0 - r);
            }
        }
        if (s.log_weight != kNegInf) births.push_back(std::move(s));
    }
    std::stable_sort(births.begin(), births.end(),
                     [](const BirthSubset& a, const BirthSubset& b) { return a.log_weight > b.log_weight; });

    const double log_floor = params.hypothesis_weight_floor > 0.0 ? std::log(params.hypothesis_weight_floor) : kNegInf;
    const double log_ps = safe_log(motion.survival_probability);
    const double log_qs = safe_log(1.0 - motion.survival_probability);

    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::pair<std::vector<std::size_t>, double>> survivors;
    std::vector<std::size_t> kept;
    for (const auto& hyp : prior.hypotheses) {
        survivors.clear();
        enumerate_survivors(hyp, 0, hyp.log_weight, log_ps, log_qs, log_floor, kept, survivors);
        for (const auto& [slots, log_ws] : survivors) {
            for (const auto& b : births) {
                const double lw = log_ws + b.log_weight;
                if (lw < log_floor || lw == kNegInf) break;
                std::vector<std::size_t> tracks;
                tracks.reserve(slots.size() + b.members.size());
                for (auto s : slots) tracks.push_back(hyp.tracks[s]);
                tracks.insert(tracks.end(), b.members.begin(), b.members.end());
                std::sort(tracks.begin(), tracks.end(), [&](std::size_t x, std::size_t y) {
                    return out.track_table[x].label < out.track_table[y].label;
                });
                auto [it, inserted] = index.try_emplace(tracks, out.hypotheses.size());
                if (inserted) {
                    GlmbHypothesis h;
                    for (auto t : tracks) h.label_set.push_back(out.track_table[t].label);
                    if (!is_label_set(h.label_set))
                        throw InconsistentDensity("birth label collides with an existing label");
                    h.tracks = std::move(tracks);
                    h.log_weight = lw;
                    out.hypotheses.push_back(std::move(h));
                } else {
                    auto& h = out.hypotheses[it->second];
                    h.log_weight = log_add(h.log_weight, lw);
                }
            }
        }
    }
    if (out.hypotheses.empty()) throw TruncationError("prediction produced no hypothesis above the weight floor");
    return finish(std::move(out), params);
}

DeltaGlmbDensity update(const DeltaGlmbDensity& predicted, const MeasurementSet& measurements,
                        const SensorModel& sensor, const FilterParams& params, UpdateStats* stats) {
    const std::size_t m = measurements.size();
    std::vector<double> log_kappa(m);
    for (std::size_t i = 0; i < m; ++i)
        log_kappa[i] = std::log(std::max(sensor.clutter_intensity(measurements[i]), kMinClutterIntensity));
    const auto reduction = params.reduction();

    // Likelihoods only for tracks some hypothesis references.
    std::vector<char> referenced(predicted.track_table.size(), 0);
    for (const auto& h : predicted.hypotheses)
        for (auto t : h.tracks) referenced[t] = 1;
    std::vector<TrackLikelihood> lik(predicted.track_table.size());
    for (std::size_t t = 0; t < predicted.track_table.size(); ++t)
        if (referenced[t]) lik[t] = track_likelihood(predicted.track_table[t], measurements, sensor, log_kappa);

    DeltaGlmbDensity out;
    // (track, column) -> posterior track id; column m is the missed detection.
    std::vector<std::vector<std::size_t>> made(predicted.track_table.size(),
                                               std::vector<std::size_t>(m + 1, SIZE_MAX));
    auto posterior_track = [&](std::size_t t, int meas) -> std::size_t {
        const std::size_t col = meas < 0 ? m : static_cast<std::size_t>(meas);
        auto& slot = made[t][col];
        if (slot == SIZE_MAX) {
            slot = out.track_table.size();
            if (meas < 0)
                out.track_table.push_back(missed_track(predicted.track_table[t], lik[t]));
            else
                out.track_table.push_back(
                    detected_track(predicted.track_table[t], lik[t], measurements[static_cast<std::size_t>(meas)],
                                   reduction));
        }
        return slot;
    };

    std::size_t evaluated = 0;
    for (std::size_t hi = 0; hi < predicted.hypotheses.size(); ++hi) {
        const auto& hyp = predicted.hypotheses[hi];
        const std::size_t n = hyp.tracks.size();

        std::vector<std::pair<std::vector<int>, double>> assoc;  // (meas per slot, log gain)
        if (params.association == AssociationMode::exhaustive) {
            std::vector<std::vector<int>> maps;
            std::vector<int> current(n, -1);
            std::vector<char> used(m, 0);
            enumerate_associations(0, n, m, current, used, maps);
            for (auto& a : maps) {
                double g = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const auto& tl = lik[hyp.tracks[j]];
                    g += a[j] < 0 ? tl.log_missed : tl.log_detect[static_cast<std::size_t>(a[j])];
                }
                if (g != kNegInf) assoc.emplace_back(std::move(a), g);
            }
        } else {
            const double w = std::exp(hyp.log_weight);
            const auto k = static_cast<std::size_t>(
                std::max(1.0, std::ceil(static_cast<double>(params.max_hypotheses) * w)));
            Eigen::MatrixXd cost = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n),
                                                             static_cast<Eigen::Index>(m + n), kInf);
            for (std::size_t j = 0; j < n; ++j) {
                const auto& tl = lik[hyp.tracks[j]];
                for (std::size_t i = 0; i < m; ++i) cost(j, i) = -tl.log_detect[i];
                cost(j, m + j) = -tl.log_missed;
            }
            for (auto& sol : murty_k_best(cost, k)) {
                std::vector<int> a(n);
                for (std::size_t j = 0; j < n; ++j) {
                    const int c = sol.row_to_col[j];
                    a[j] = c < static_cast<int>(m) ? c : -1;
                }
                assoc.emplace_back(std::move(a), -sol.cost);
            }
        }

        for (const auto& [a, gain] : assoc) {
            ++evaluated;
            GlmbHypothesis h;
            h.label_set = hyp.label_set;
            h.tracks.resize(n);
            for (std::size_t j = 0; j < n; ++j) h.tracks[j] = posterior_track(hyp.tracks[j], a[j]);
            h.log_weight = hyp.log_weight + gain;
            out.hypotheses.push_back(std::move(h));
        }
    }

    bool degenerate = out.hypotheses.empty();
    if (!degenerate) {
        std::vector<double> logs;
        for (const auto& h : out.hypotheses) logs.push_back(h.log_weight);
        degenerate = !std::isfinite(log_sum_exp(logs));
    }
    if (degenerate) {
        out = DeltaGlmbDensity{};
        for (const auto& hyp : predicted.hypotheses) {
            GlmbHypothesis h{hyp.label_set, {}, hyp.log_weight};
            for (auto t : hyp.tracks) {
                out.track_table.push_back(predicted.track_table[t]);
                h.tracks.push_back(out.track_table.size() - 1);
            }
            out.hypotheses.push_back(std::move(h));
        }
    }
    if (stats) {
        stats->fell_back_to_missed = degenerate;
        stats->assignments = evaluated;
    }
    return finish(std::move(out), params);
}

namespace {

LabeledGaussianMixture blend(const std::map<std::size_t, double>& weights_by_track,
                             const std::vector<LabeledGaussianMixture>& table,
                             const std::optional<MixtureReductionParams>& reduction) {
    LabeledGaussianMixture out;
    for (const auto& [t, w] : weights_by_track) {
        out.label = table[t].label;
        for (const auto& c : table[t].components) {
            GaussianComponent g = c;
            g.weight *= w;
            out.components.push_back(std::move(g));
        }
    }
    if (reduction)
        out.components = reduce_mixture(std::move(out.components), *reduction);
    else
        normalize_weights(out.components);
    return out;
}

}  // namespace

MDeltaGlmbDensity marginalize_to_mdglmb(const DeltaGlmbDensity& density,
                                        const std::optional<MixtureReductionParams>& reduction) {
    std::map<LabelSet, std::vector<std::size_t>> groups;
    for (std::size_t h = 0; h < density.hypotheses.size(); ++h)
        groups[density.hypotheses[h].label_set].push_back(h);

    MDeltaGlmbDensity out;
    for (const auto& [labels, members] : groups) {
        std::vector<double> logs;
        for (auto h : members) logs.push_back(density.hypotheses[h].log_weight);
        const double log_w = log_sum_exp(logs);
        MDeltaGlmbEntry entry{labels, log_w, {}};
        for (std::size_t s = 0; s < labels.size(); ++s) {
            std::map<std::size_t, double> by_track;
            for (auto h : members)
                by_track[density.hypotheses[h].tracks[s]] += std::exp(density.hypotheses[h].log_weight - log_w);
            entry.densities.push_back(blend(by_track, density.track_table, reduction));
        }
        out.entries.push_back(std::move(entry));
    }
    out.normalize();
    return out;
}

DeltaGlmbDensity to_delta_glmb(const MDeltaGlmbDensity& density) {
    DeltaGlmbDensity out;
    for (const auto& e : density.entries) {
        GlmbHypothesis h{e.label_set, {}, e.log_weight};
        for (const auto& m : e.densities) {
            h.tracks.push_back(out.track_table.size());
            out.track_table.push_back(m);
        }
        out.hypotheses.push_back(std::move(h));
    }
    out.normalize();
    return out;
}

LmbDensity convert_to_lmb(const DeltaGlmbDensity& density, const std::optional<MixtureReductionParams>& reduction) {
    std::map<TrackLabel, std::map<std::size_t, double>> by_label;
    for (std::size_t h = 0; h < density.hypotheses.size(); ++h) {
        const auto& hyp = density.hypotheses[h];
        const double w = density.weight(h);
        for (std::size_t s = 0; s < hyp.tracks.size(); ++s) by_label[hyp.label_set[s]][hyp.tracks[s]] += w;
    }
    LmbDensity out;
    for (auto& [label, by_track] : by_label) {
        double r = 0.0;
        for (const auto& [t, w] : by_track) r += w;
        for (auto& [t, w] : by_track) w /= r;
        out.tracks.push_back(LmbTrack{std::min(r, 1.0), blend(by_track, density.track_table, reduction)});
    }
    return out;
}

std::vector<LabeledState> map_estimate(const MDeltaGlmbDensity& density) {
    const auto card = density.cardinality_distribution();
    if (card.empty()) return {};
    std::size_t n_star = 0;
    for (std::size_t n = 1; n < card.size(); ++n)
        if (card[n] > card[n_star]) n_star = n;

    const MDeltaGlmbEntry* best = nullptr;
    for (const auto& e : density.entries) {
        if (e.label_set.size() != n_star) continue;
        if (!best || e.log_weight > best->log_weight) best = &e;
    }
    std::vector<LabeledState> out;
    if (!best) return out;
    for (std::size_t s = 0; s < best->label_set.size(); ++s)
        out.push_back(LabeledState{best->label_set[s], best->densities[s].dominant().mean});
    return out;
}

}  // namespace lrfs
