#include "lrfs/control.hpp"

#include "lrfs/errors.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <limits>

namespace lrfs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Pseudo-updated, marginalized local densities indexed [action][sample];
/// empty optional marks a chain that failed.
using PseudoUpdates = std::vector<std::vector<std::optional<MDeltaGlmbDensity>>>;

DeltaGlmbDensity control_prior(const DeltaGlmbDensity& local, const FilterParams& params) {
    try {
        return truncate(local, params);
    } catch (const TruncationError&) {
        FilterParams keep_one = params;
        keep_one.max_hypotheses = 1;
        keep_one.hypothesis_weight_floor = 0.0;
        return truncate(local, keep_one);
    }
}

/// The fused density as seen by the control stage: same hypothesis budget as
/// the chain priors, so every sampled label set is one the chains start from.
MDeltaGlmbDensity control_fused(const MDeltaGlmbDensity& fused, const FilterParams& params) {
    return marginalize_to_mdglmb(control_prior(to_delta_glmb(fused), params));
}

PseudoUpdates pseudo_updates_for_sensor(const DeltaGlmbDensity& prior, std::size_t sensor,
                                        std::span<const MultiTargetSample> samples, const ControlActionGrid& grid,
                                        const ControlConfig& cfg, const ControlModels& models, ControlStats& stats) {
    const auto& actions = grid.per_sensor[sensor];
    const auto& sm = models.sensors[sensor];
    MixtureReductionParams reduction = models.reduction;
    reduction.max_components = std::min(reduction.max_components, cfg.pseudo_filter.max_components_per_track);
    PseudoUpdates out(actions.size(), std::vector<std::optional<MDeltaGlmbDensity>>(samples.size()));
    for (std::size_t a = 0; a < actions.size(); ++a) {
        const auto trajectory = sensor_trajectory(sm, actions[a], cfg.step_s, cfg.horizon);
        for (std::size_t j = 0; j < samples.size(); ++j) {
            ++stats.pseudo_update_chains;
            try {
                const auto pims = generate_pims(samples[j], actions[a], sm, models.step_motion, cfg.horizon);
                const auto post = pseudo_update_local(prior, pims, trajectory, models.step_motion, models.birth,
                                                      cfg.pseudo_filter, cfg.pseudo_update_birth, models.scan);
                out[a][j] = marginalize_to_mdglmb(post, reduction);
            } catch (const Error& e) {
                spdlog::warn("pseudo-update failed (sensor {}, action {}, sample {}): {}", sensor, a, j, e.what());
            }
        }
    }
    return out;
}

double divergence_or_excluded(const MDeltaGlmbDensity& predicted, const MDeltaGlmbDensity& updated,
                              HypervolumeUnit k) {
    try {
        const double d = cs_divergence(predicted, updated, k);
        return std::isfinite(d) ? d : kNegInf;
    } catch (const Error&) {
        return kNegInf;
    }
}

double ranked_value(const ControlConfig& cfg, double expected) {
    if (expected == kNegInf) return kNegInf;
    return cfg.reward_transform ? cfg.reward_transform(expected) : expected;
}

void check_inputs(std::span<const DeltaGlmbDensity> locals, const ControlActionGrid& grid, const ControlConfig& cfg,
                  const ControlModels& models) {
    grid.validate();
    if (locals.size() != grid.per_sensor.size() || models.sensors.size() != locals.size())
        throw ConfigError("sensor count mismatch between locals, grid and models");
    if (cfg.horizon < 0 || cfg.num_samples < 1 || !(cfg.step_s > 0.0)) throw ConfigError("invalid control config");
}

}  // namespace

ControlActionGrid ControlActionGrid::uniform(std::size_t sensors, double step_deg) {
    if (!(step_deg > 0.0)) throw ConfigError("action step must be positive");
    std::vector<ControlAction> set;
    const auto count = static_cast<int>(std::floor(360.0 / step_deg + 1e-9));
    for (int i = 0; i <= count; ++i) set.push_back(ControlAction{-180.0 + step_deg * i});
    return ControlActionGrid{std::vector<std::vector<ControlAction>>(sensors, set)};
}

std::size_t ControlActionGrid::joint_size() const {
    std::size_t n = 1;
    for (const auto& s : per_sensor) n *= s.size();
    return per_sensor.empty() ? 0 : n;
}

std::vector<std::size_t> ControlActionGrid::joint_indices(std::size_t flat) const {
    std::vector<std::size_t> idx(per_sensor.size());
    for (std::size_t i = per_sensor.size(); i-- > 0;) {
        idx[i] = flat % per_sensor[i].size();
        flat /= per_sensor[i].size();
    }
    return idx;
}

void ControlActionGrid::validate() const {
    if (per_sensor.empty()) throw ConfigError("action grid has no sensors");
    for (const auto& s : per_sensor)
        if (s.empty()) throw ConfigError("empty per-sensor action set");
}

std::vector<MultiTargetSample> sample_multitarget(const MDeltaGlmbDensity& fused, int num_samples,
                                                  std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> w;
    for (std::size_t e = 0; e < fused.entries.size(); ++e) w.push_back(fused.weight(e));
    std::vector<MultiTargetSample> out(static_cast<std::size_t>(std::max(num_samples, 0)));
    if (w.empty()) return out;
    std::discrete_distribution<std::size_t> pick_entry(w.begin(), w.end());
    for (auto& s : out) {
        const auto& e = fused.entries[pick_entry(rng)];
        for (std::size_t t = 0; t < e.label_set.size(); ++t) {
            const auto& comps = e.densities[t].components;
            std::vector<double> cw;
            for (const auto& c : comps) cw.push_back(c.weight);
            std::discrete_distribution<std::size_t> pick_comp(cw.begin(), cw.end());
            const auto& c = comps[pick_comp(rng)];
            s.targets.push_back(LabeledState{e.label_set[t], sample_gaussian(c.mean, c.covariance, rng)});
        }
    }
    return out;
}

MDeltaGlmbDensity pseudo_predict(const MDeltaGlmbDensity& fused, const MotionModel& step_motion, int horizon) {
    MDeltaGlmbDensity out = fused;
    for (auto& e : out.entries)
        for (auto& d : e.densities)
            for (auto& c : d.components)
                for (int h = 0; h < horizon; ++h) kalman_predict(c, step_motion.transition, step_motion.process_noise);
    return out;
}

std::vector<SensorModel> sensor_trajectory(const SensorModel& sensor, const ControlAction& action, double step_s,
                                           int horizon) {
    const SensorModel turned = apply_action(sensor, action);
    std::vector<SensorModel> out;
    for (int h = 1; h <= horizon; ++h) out.push_back(advance(turned, step_s * h));
    return out;
}

std::vector<MeasurementSet> generate_pims(const MultiTargetSample& sample, const ControlAction& action,
                                          const SensorModel& sensor, const MotionModel& step_motion, int horizon) {
    const auto poses = sensor_trajectory(sensor, action, step_motion.period_s, horizon);
    std::vector<Vector> states;
    for (const auto& t : sample.targets) states.push_back(t.state);
    std::vector<MeasurementSet> out;
    for (int h = 0; h < horizon; ++h) {
        MeasurementSet z;
        for (auto& x : states) {
            x = step_motion.transition * x;
            z.push_back(poses[static_cast<std::size_t>(h)].ideal_measurement(x));
        }
        out.push_back(std::move(z));
    }
    return out;
}

DeltaGlmbDensity pseudo_update_local(const DeltaGlmbDensity& local_posterior, std::span<const MeasurementSet> pims,
                                     std::span<const SensorModel> trajectory, const MotionModel& step_motion,
                                     const BirthModel& birth, const FilterParams& params, bool birth_enabled,
                                     int scan) {
    if (pims.size() != trajectory.size()) throw ConfigError("PIMS and trajectory lengths differ");
    static const BirthModel no_birth{};
    DeltaGlmbDensity d = local_posterior;
    for (std::size_t h = 0; h < pims.size(); ++h) {
        const auto predicted =
            predict(d, step_motion, birth_enabled ? birth : no_birth, params, scan + static_cast<int>(h) + 1);
        d = update(predicted, pims[h], trajectory[h], params);
    }
    return d;
}

Decision jdm_select(const MDeltaGlmbDensity& fused, std::span<const DeltaGlmbDensity> locals,
                    const ControlActionGrid& grid, const ControlConfig& cfg, const ControlModels& models,
                    std::uint64_t seed) {
    check_inputs(locals, grid, cfg, models);
    Decision out;
    const auto prior = control_fused(fused, cfg.pseudo_filter);
    const auto samples = sample_multitarget(prior, cfg.num_samples, seed);
    const auto predicted = pseudo_predict(prior, models.step_motion, cfg.horizon);

    std::vector<PseudoUpdates> pu;
    for (std::size_t i = 0; i < locals.size(); ++i)
        pu.push_back(pseudo_updates_for_sensor(control_prior(locals[i], cfg.pseudo_filter), i, samples, grid, cfg,
                                               models, out.stats));

    const std::size_t joint = grid.joint_size();
    std::vector<const MDeltaGlmbDensity*> inputs(locals.size());
    std::size_t best = joint;
    double best_value = kNegInf;
    for (std::size_t flat = 0; flat < joint; ++flat) {
        const auto idx = grid.joint_indices(flat);
        double sum = 0.0;
        for (std::size_t j = 0; j < samples.size(); ++j) {
            ++out.stats.fusions;
            ++out.stats.reward_evaluations;
            if (sum == kNegInf) continue;
            bool ok = true;
            for (std::size_t i = 0; i < locals.size() && ok; ++i) {
                const auto& d = pu[i][idx[i]][j];
                ok = d.has_value();
                if (ok) inputs[i] = &*d;
            }
            if (!ok) {
                sum = kNegInf;
                continue;
            }
            try {
                const auto f = fuse_mdglmb(inputs, models.fusion, models.reduction);
                sum += divergence_or_excluded(predicted, f, cfg.hypervolume);
            } catch (const Error& e) {
                spdlog::warn("joint action {} sample {} excluded: {}", flat, j, e.what());
                sum = kNegInf;
            }
        }
        const double expected = sum == kNegInf ? kNegInf : sum / static_cast<double>(samples.size());
        if (expected == kNegInf) ++out.stats.excluded_candidates;
        out.expected_rewards.push_back(expected);
        const double v = ranked_value(cfg, expected);
        if (v != kNegInf && (best == joint || v > best_value)) {
            best = flat;
            best_value = v;
        }
    }

    if (best == joint) {
        out.fallback = true;
        out.actions.assign(locals.size(), ControlAction{0.0});
        spdlog::warn("every joint action excluded; holding headings");
        return out;
    }
    const auto idx = grid.joint_indices(best);
    for (std::size_t i = 0; i < idx.size(); ++i) out.actions.push_back(grid.per_sensor[i][idx[i]]);
    return out;
}

Decision idm_select(const MDeltaGlmbDensity& fused, std::span<const DeltaGlmbDensity> locals,
                    const ControlActionGrid& grid, const ControlConfig& cfg, const ControlModels& models,
                    std::uint64_t seed) {
    check_inputs(locals, grid, cfg, models);
    Decision out;
    const auto prior = control_fused(fused, cfg.pseudo_filter);
    const auto samples = sample_multitarget(prior, cfg.num_samples, seed);
    const auto predicted = pseudo_predict(prior, models.step_motion, cfg.horizon);

    for (std::size_t i = 0; i < locals.size(); ++i) {
        const auto pu = pseudo_updates_for_sensor(control_prior(locals[i], cfg.pseudo_filter), i, samples, grid, cfg,
                                                  models, out.stats);
        const auto& actions = grid.per_sensor[i];
        std::size_t best = actions.size();
        double best_value = kNegInf;
        for (std::size_t a = 0; a < actions.size(); ++a) {
            double sum = 0.0;
            for (std::size_t j = 0; j < samples.size(); ++j) {
                ++out.stats.reward_evaluations;
                sum = pu[a][j] ? sum + divergence_or_excluded(predicted, *pu[a][j], cfg.hypervolume) : kNegInf;
            }
            const double expected = sum == kNegInf ? kNegInf : sum / static_cast<double>(samples.size());
            if (expected == kNegInf) ++out.stats.excluded_candidates;
            out.expected_rewards.push_back(expected);
            const double v = ranked_value(cfg, expected);
            if (v != kNegInf && (best == actions.size() || v > best_value)) {
                best = a;
                best_value = v;
            }
        }
        if (best == actions.size()) {
            out.fallback = true;
            out.actions.push_back(ControlAction{0.0});
            spdlog::warn("every action of sensor {} excluded; holding heading", i);
        } else {
            out.actions.push_back(actions[best]);
        }
    }
    return out;
}

}  // namespace lrfs
