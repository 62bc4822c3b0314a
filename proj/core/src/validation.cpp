#include "lrfs/validation.hpp"

#include "lrfs/cs_divergence.hpp"
#include "lrfs/errors.hpp"
#include "lrfs/experiment.hpp"
#include "lrfs/format.hpp"
#include "lrfs/gci_fusion.hpp"
#include "lrfs/glmb_filter.hpp"
#include "lrfs/oracles.hpp"
#include "lrfs/ospa.hpp"
#include "lrfs/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace lrfs::validation {

namespace {

using Clock = std::chrono::steady_clock;

double rel_err(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

double matrix_rel_err(const Matrix& a, const Matrix& b) {
    return (a - b).norm() / std::max(b.norm(), 1e-300);
}

double vector_rel_err(const Vector& a, const Vector& b) {
    return (a - b).norm() / std::max(b.norm(), 1.0);
}

template <typename Fn>
CriterionResult timed(int id, std::string name, Fn&& body) {
    const auto t0 = Clock::now();
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    try {
        std::ostringstream detail;
        r.passed = body(detail);
        r.detail = detail.str();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

MDeltaGlmbDensity single_track(const GaussianComponent& c, TrackLabel label = {0, 0}) {
    MDeltaGlmbDensity d;
    GaussianComponent g = c;
    g.weight = 1.0;
    d.entries.push_back(MDeltaGlmbEntry{{label}, 0.0, {LabeledGaussianMixture{label, {g}}}});
    return d;
}

GaussianComponent gaussian_1d(double mean, double var, double weight = 1.0) {
    GaussianComponent c;
    c.weight = weight;
    c.mean = Vector::Constant(1, mean);
    c.covariance = Matrix::Constant(1, 1, var);
    return c;
}

std::string mixture_signature(const LabeledGaussianMixture& m) {
    std::string s = m.label.to_string();
    for (const auto& c : m.components) {
        s += '|' + fmt_double(c.weight);
        for (Eigen::Index i = 0; i < c.mean.size(); ++i) s += ',' + fmt_double(c.mean(i));
    }
    return s;
}

std::map<std::string, double> hypothesis_map(const DeltaGlmbDensity& d) {
    std::map<std::string, double> out;
    for (std::size_t h = 0; h < d.hypotheses.size(); ++h) {
        std::string key;
        for (std::size_t s = 0; s < d.hypotheses[h].tracks.size(); ++s) key += mixture_signature(d.density(h, s)) + ';';
        out[key] += d.weight(h);
    }
    return out;
}

bool same_mixture_unordered(const LabeledGaussianMixture& a, const LabeledGaussianMixture& b, double tol,
                            double& worst) {
    if (a.components.size() != b.components.size() || a.label != b.label) return false;
    auto key = [](const GaussianComponent& c) { return std::pair{c.mean(0), c.weight}; };
    auto sa = a.components;
    auto sb = b.components;
    std::sort(sa.begin(), sa.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
    std::sort(sb.begin(), sb.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
    for (std::size_t i = 0; i < sa.size(); ++i) {
        worst = std::max({worst, rel_err(sa[i].weight, sb[i].weight), vector_rel_err(sa[i].mean, sb[i].mean),
                          matrix_rel_err(sa[i].covariance, sb[i].covariance)});
    }
    return worst < tol;
}

bool same_density(const MDeltaGlmbDensity& a, const MDeltaGlmbDensity& b, double tol, double& worst) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t e = 0; e < a.entries.size(); ++e) {
        const auto& x = a.entries[e];
        const auto& y = b.entries[e];
        if (x.label_set != y.label_set) return false;
        worst = std::max(worst, std::abs(std::exp(x.log_weight) - std::exp(y.log_weight)));
        for (std::size_t s = 0; s < x.densities.size(); ++s)
            if (!same_mixture_unordered(x.densities[s], y.densities[s], tol, worst)) return false;
    }
    return worst < tol;
}

}  // namespace

CriterionResult check_cs_oracle(std::uint64_t seed, int pairs) {
    return timed(1, "cs closed form matches set-integral oracle", [&](std::ostream& os) {
        Rng rng(seed);
        oracle::RandomDensitySpec spec;
        const auto grid = oracle::uniform_grid_1d(-10.0, 10.0, 64);
        const LabelSet labels{{0, 0}, {0, 1}};
        double worst = 0.0;
        int done = 0;
        while (done < pairs) {
            const auto phi = oracle::random_mdglmb(rng, spec);
            const auto psi = oracle::random_mdglmb(rng, spec);
            const double closed = zeta(phi, psi);
            if (!(closed > 0.0)) continue;
            const double brute = oracle::set_integral(
                [&](std::span<const LabeledState> x) {
                    return oracle::mdglmb_set_density(phi, x) * oracle::mdglmb_set_density(psi, x);
                },
                grid, labels, 2);
            worst = std::max(worst, rel_err(closed, brute));
            ++done;
        }
        os << pairs << " pairs, max relative error " << worst;
        return worst < 1e-3;
    });
}

CriterionResult check_divergence_axioms(std::uint64_t seed, int pairs) {
    return timed(2, "cs divergence axioms", [&](std::ostream& os) {
        Rng rng(seed);
        oracle::RandomDensitySpec spec{.dim = 4, .num_labels = 3, .max_components = 3, .mean_range = 40.0,
                                       .std_min = 3.0, .std_max = 30.0, .entry_probability = 0.6};
        double sym = 0.0, neg = 0.0, self = 0.0;
        for (int i = 0; i < pairs; ++i) {
            const auto phi = oracle::random_mdglmb(rng, spec);
            const auto psi = oracle::random_mdglmb(rng, spec);
            const double a = cs_divergence(phi, psi);
            const double b = cs_divergence(psi, phi);
            if (std::isfinite(a) || std::isfinite(b)) sym = std::max(sym, std::abs(a - b));
            neg = std::min(neg, std::min(a, b));
            self = std::max({self, std::abs(cs_divergence(phi, phi)), std::abs(cs_divergence(psi, psi))});
        }
        double closed = 0.0;
        for (double mu : {0.0, 0.5, 1.0, 2.5, 4.0})
            for (double var : {0.25, 1.0, 9.0}) {
                const double d = cs_divergence(single_track(gaussian_1d(0.0, var)), single_track(gaussian_1d(mu, var)));
                const double expected = -(std::log(std::exp(-0.5 * mu * mu / (2.0 * var)) / std::sqrt(2 * std::numbers::pi * 2.0 * var)) -
                                          std::log(1.0 / std::sqrt(2 * std::numbers::pi * 2.0 * var)));
                closed = std::max(closed, std::abs(d - expected) / std::max(1.0, expected));
            }
        os << "symmetry " << sym << ", min D " << neg << ", max self " << self << ", closed-form error " << closed;
        return sym < 1e-12 && neg >= -1e-9 && self < 1e-9 && closed < 1e-9;
    });
}

CriterionResult check_gci(std::uint64_t seed) {
    return timed(3, "gci fusion correctness", [&](std::ostream& os) {
        Rng rng(seed);
        std::uniform_real_distribution<double> uw(0.1, 0.9);

        // Single Gaussians against direct information-form algebra.
        oracle::RandomDensitySpec g4{.dim = 4, .num_labels = 1, .max_components = 1, .mean_range = 100.0,
                                     .std_min = 2.0, .std_max = 40.0};
        double info_err = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto a = oracle::random_component(rng, g4);
            const auto b = oracle::random_component(rng, g4);
            const double w = uw(rng);
            const std::vector<MDeltaGlmbDensity> in{single_track(a), single_track(b)};
            const auto f = fuse_mdglmb(in, FusionWeights{{w, 1.0 - w}});
            const Eigen::Matrix4d ia = Eigen::Matrix4d(a.covariance).inverse();
            const Eigen::Matrix4d ib = Eigen::Matrix4d(b.covariance).inverse();
            const Eigen::Matrix4d ps = (w * ia + (1.0 - w) * ib).inverse();
            const Eigen::Vector4d ms = ps * (w * ia * Eigen::Vector4d(a.mean) + (1.0 - w) * ib * Eigen::Vector4d(b.mean));
            const auto& c = f.entries.front().densities.front().components.front();
            info_err = std::max({info_err, matrix_rel_err(c.covariance, Matrix(ps)), vector_rel_err(c.mean, Vector(ms))});
        }

        // Mixture power product against quadrature.
        std::uniform_real_distribution<double> sep(2.5, 4.0), sd(0.8, 1.2), shift(-0.5, 0.5);
        double integral_err = 0.0, moment_err = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double s = sep(rng);
            LabeledGaussianMixture m1{{0, 0}, {gaussian_1d(-s, std::pow(sd(rng), 2), uw(rng)),
                                                gaussian_1d(s, std::pow(sd(rng), 2), uw(rng))}};
            LabeledGaussianMixture m2{{0, 0}, {gaussian_1d(-s + shift(rng), std::pow(sd(rng), 2), uw(rng)),
                                                gaussian_1d(s + shift(rng), std::pow(sd(rng), 2), uw(rng))}};
            normalize_weights(m1.components);
            normalize_weights(m2.components);
            const std::vector<LabeledGaussianMixture> in{m1, m2};
            const auto pp = weighted_gm_power_product(in, FusionWeights{{0.5, 0.5}});
            Vector x(1);
            const auto exact = [&](double t) {
                x(0) = t;
                return std::sqrt(m1.pdf(x) * m2.pdf(x));
            };
            const double c_quad = oracle::trapezoid(exact, -20.0, 20.0, 8000);
            const double c_err = rel_err(std::exp(pp.log_integral), c_quad);
            const double mean_quad = oracle::trapezoid([&](double t) { return t * exact(t); }, -20.0, 20.0, 8000) / c_quad;
            const double var_quad =
                oracle::trapezoid([&](double t) { return (t - mean_quad) * (t - mean_quad) * exact(t); }, -20.0, 20.0, 8000) /
                c_quad;
            double mean_fused = 0.0, second_fused = 0.0;
            for (const auto& c : pp.mixture.components) {
                mean_fused += c.weight * c.mean(0);
                second_fused += c.weight * (c.covariance(0, 0) + c.mean(0) * c.mean(0));
            }
            const double var_fused = second_fused - mean_fused * mean_fused;
            // Means are compared against the mixture spread so a near-zero mean is not amplified.
            const double m_err = std::abs(mean_fused - mean_quad) / std::sqrt(var_quad);
            const double v_err = rel_err(var_fused, var_quad);
            integral_err = std::max(integral_err, c_err);
            moment_err = std::max({moment_err, m_err, v_err});
        }

        // Idempotence on single-Gaussian tracks.
        oracle::RandomDensitySpec single{.dim = 4, .num_labels = 3, .max_components = 1, .mean_range = 100.0,
                                         .std_min = 2.0, .std_max = 40.0, .entry_probability = 0.7};
        double idem = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto d = oracle::random_mdglmb(rng, single);
            const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
            std::vector<double> w(n);
            double tot = 0.0;
            for (auto& v : w) tot += (v = uw(rng));
            for (auto& v : w) v /= tot;
            const std::vector<MDeltaGlmbDensity> in(n, d);
            const auto f = fuse_mdglmb(in, FusionWeights{w});
            if (!same_density(f, d, 1e-9, idem)) idem = std::max(idem, 1.0);
        }

        // Joint permutation of inputs and weights.
        oracle::RandomDensitySpec full{.dim = 4, .num_labels = 2, .max_components = 2, .mean_range = 30.0,
                                       .std_min = 5.0, .std_max = 30.0, .entry_probability = 1.0};
        double perm = 0.0;
        for (int i = 0; i < 50; ++i) {
            const std::vector<MDeltaGlmbDensity> in{oracle::random_mdglmb(rng, full), oracle::random_mdglmb(rng, full),
                                                    oracle::random_mdglmb(rng, full)};
            const FusionWeights w{{0.2, 0.3, 0.5}};
            const auto f = fuse_mdglmb(in, w);
            const std::vector<MDeltaGlmbDensity> rin{in[2], in[0], in[1]};
            const auto g = fuse_mdglmb(rin, FusionWeights{{0.5, 0.2, 0.3}});
            if (!same_density(g, f, 1e-9, perm)) perm = std::max(perm, 1.0);
        }

        os << "information form " << info_err << ", mixture integral vs quadrature " << integral_err << ", moments " << moment_err << ", idempotence " << idem
           << ", permutation " << perm;
        return info_err < 1e-9 && integral_err < 0.05 && moment_err < 0.05 && idem < 1e-9 && perm < 1e-9;
    });
}

CriterionResult check_filter_oracle(std::uint64_t seed, int instances) {
    return timed(4, "ranked update matches exhaustive enumeration", [&](std::ostream& os) {
        Rng rng(seed);
        std::uniform_real_distribution<double> up(-800.0, 800.0), uv(-10.0, 10.0), u01(0.0, 1.0), uw(0.05, 1.0);
        std::uniform_int_distribution<int> count(0, 3), comps(1, 2);
        SensorModel sensor;
        sensor.position = {0.0, -1500.0};

        FilterParams ranked{.max_hypotheses = 1'000'000, .hypothesis_weight_floor = 0.0};
        FilterParams exhaustive = ranked;
        exhaustive.association = AssociationMode::exhaustive;

        double worst = 0.0;
        std::size_t compared = 0;
        for (int inst = 0; inst < instances; ++inst) {
            const int n_tracks = 1 + inst % 3;
            DeltaGlmbDensity pred;
            for (int t = 0; t < n_tracks; ++t) {
                LabeledGaussianMixture m{{1, t}, {}};
                const int nc = comps(rng);
                for (int c = 0; c < nc; ++c) {
                    GaussianComponent g;
                    g.weight = uw(rng);
                    g.mean = KinematicState{up(rng), uv(rng), up(rng), uv(rng)}.to_vector();
                    g.covariance = Matrix::Zero(4, 4);
                    g.covariance.diagonal() << 900.0, 900.0, 25.0, 25.0;
                    m.components.push_back(g);
                }
                normalize_weights(m.components);
                pred.track_table.push_back(std::move(m));
            }
            for (std::size_t mask = 0; mask < (std::size_t{1} << n_tracks); ++mask) {
                if (mask != 0 && u01(rng) < 0.3) continue;
                GlmbHypothesis h;
                for (int t = 0; t < n_tracks; ++t)
                    if (mask & (std::size_t{1} << t)) {
                        h.label_set.push_back(pred.track_table[static_cast<std::size_t>(t)].label);
                        h.tracks.push_back(static_cast<std::size_t>(t));
                    }
                h.log_weight = std::log(uw(rng));
                pred.hypotheses.push_back(std::move(h));
            }
            pred.normalize();

            MeasurementSet z;
            const int m = count(rng);
            for (int i = 0; i < m; ++i) {
                if (i < n_tracks && u01(rng) < 0.7) {
                    const auto& c = pred.track_table[static_cast<std::size_t>(i)].components.front();
                    Measurement zi = sensor.ideal_measurement(c.mean);
                    zi(0) += 0.01 * (u01(rng) - 0.5);
                    zi(1) += 40.0 * (u01(rng) - 0.5);
                    z.push_back(zi);
                } else {
                    z.push_back(sensor.ideal_measurement(
                        KinematicState{up(rng), 0.0, up(rng), 0.0}.to_vector()));
                }
            }

            const auto a = hypothesis_map(update(pred, z, sensor, ranked));
            const auto b = hypothesis_map(update(pred, z, sensor, exhaustive));
            if (a.size() != b.size()) {
                os << "instance " << inst << ": " << a.size() << " ranked vs " << b.size() << " exhaustive hypotheses";
                return false;
            }
            for (const auto& [key, w] : b) {
                const auto it = a.find(key);
                if (it == a.end()) {
                    os << "instance " << inst << ": hypothesis missing from ranked update";
                    return false;
                }
                worst = std::max(worst, rel_err(it->second, w));
                ++compared;
            }
        }
        os << instances << " instances, " << compared << " hypotheses, max relative weight error " << worst;
        return worst < 1e-9;
    });
}

CriterionResult check_sensor_statistics(std::uint64_t seed) {
    return timed(5, "sensor detection, clutter and noise statistics", [&](std::ostream& os) {
        Rng rng(seed);
        SensorModel sensor;
        bool ok = true;

        MeasureOptions detect_only{.noise = true, .missed_detections = true, .clutter = false};
        for (double r : {3000.0, 8000.0, 15000.0}) {
            const std::vector<LabeledState> target{{{1, 0}, KinematicState{r, 0, 0, 0}.to_vector()}};
            const int n = 10000;
            int hits = 0;
            for (int i = 0; i < n; ++i) hits += static_cast<int>(measure(target, sensor, rng, detect_only).z.size());
            const double p = sensor.detection_probability(r);
            const double band = 3.0 * std::sqrt(p * (1.0 - p) / n);
            const double est = static_cast<double>(hits) / n;
            ok = ok && std::abs(est - p) <= band;
            os << "P_D(" << r << ") " << est << " vs " << p << " (+-" << band << "); ";
        }

        MeasureOptions clutter_only{.noise = true, .missed_detections = true, .clutter = true};
        const int scans = 10000;
        double total = 0.0;
        for (int i = 0; i < scans; ++i) total += static_cast<double>(measure({}, sensor, rng, clutter_only).z.size());
        const double mean = total / scans;
        const double band = 3.0 * std::sqrt(sensor.clutter_rate / scans);
        ok = ok && std::abs(mean - sensor.clutter_rate) <= band;
        os << "clutter mean " << mean << " (+-" << band << "); ";

        MeasureOptions noise_only{.noise = true, .missed_detections = false, .clutter = false};
        const Vector x = KinematicState{1000.0, 0.0, 500.0, 0.0}.to_vector();
        const std::vector<LabeledState> target{{{1, 0}, x}};
        const Measurement ideal = sensor.ideal_measurement(x);
        const int draws = 100000;
        Eigen::Matrix2d s = Eigen::Matrix2d::Zero();
        Eigen::Vector2d mu = Eigen::Vector2d::Zero();
        std::vector<Eigen::Vector2d> e;
        e.reserve(draws);
        for (int i = 0; i < draws; ++i) {
            Eigen::Vector2d d = measure(target, sensor, rng, noise_only).z.front() - ideal;
            d(0) = wrap_angle(d(0));
            e.push_back(d);
            mu += d;
        }
        mu /= draws;
        for (const auto& d : e) s += (d - mu) * (d - mu).transpose();
        s /= draws - 1;
        const Eigen::Matrix2d r = sensor.noise_covariance(sensor.distance_to(x));
        const double eb = rel_err(s(0, 0), r(0, 0));
        const double er = rel_err(s(1, 1), r(1, 1));
        const double rho = s(0, 1) / std::sqrt(s(0, 0) * s(1, 1));
        ok = ok && eb < 0.05 && er < 0.05 && std::abs(rho) < 0.02;
        os << "bearing var err " << eb << ", range var err " << er << ", correlation " << rho;
        return ok;
    });
}

CriterionResult check_control_accounting(std::uint64_t seed) {
    return timed(6, "control cost accounting", [&](std::ostream& os) {
        DeltaGlmbDensity local;
        for (int t = 0; t < 2; ++t) {
            GaussianComponent g;
            g.mean = KinematicState{-200.0 + 400.0 * t, 5.0, 300.0, -5.0}.to_vector();
            g.covariance = Matrix::Zero(4, 4);
            g.covariance.diagonal() << 400.0, 400.0, 25.0, 25.0;
            local.track_table.push_back(LabeledGaussianMixture{{1, t}, {g}});
        }
        local.hypotheses.push_back(GlmbHypothesis{{{1, 0}, {1, 1}}, {0, 1}, std::log(0.8)});
        local.hypotheses.push_back(GlmbHypothesis{{{1, 0}}, {0}, std::log(0.2)});
        const std::vector<DeltaGlmbDensity> locals{local, local};

        ControlModels models;
        models.step_motion = MotionModel::constant_velocity(2.0, 5.0, 0.98);
        for (double x : {-1000.0, 1000.0}) {
            SensorModel s;
            s.position = {x, -1000.0};
            s.heading_deg = 90.0;
            s.speed_mps = 25.0;
            models.sensors.push_back(s);
        }
        models.fusion = FusionWeights::uniform(2);
        models.scan = 10;
        const auto marginal = marginalize_to_mdglmb(local, models.reduction);
        const std::vector<MDeltaGlmbDensity> m{marginal, marginal};
        const auto fused = fuse_mdglmb(m, models.fusion, models.reduction);

        const auto grid = ControlActionGrid::uniform(2, 30.0);
        ControlConfig cfg;
        const auto idm = idm_select(fused, locals, grid, cfg, models, seed);
        const auto jdm = jdm_select(fused, locals, grid, cfg, models, seed);
        os << "grid " << grid.per_sensor[0].size() << "x" << grid.per_sensor[1].size() << ", IDM chains "
           << idm.stats.pseudo_update_chains << ", JDM chains " << jdm.stats.pseudo_update_chains << ", JDM fusions "
           << jdm.stats.fusions << ", JDM rewards " << jdm.stats.reward_evaluations;
        return grid.per_sensor[0].size() == 13 && idm.stats.pseudo_update_chains == 2 * 13 * 40 &&
               idm.stats.reward_evaluations == 2 * 13 * 40 && jdm.stats.pseudo_update_chains == 2 * 13 * 40 &&
               jdm.stats.fusions == 13 * 13 * 40 && jdm.stats.reward_evaluations == 13 * 13 * 40;
    });
}

CriterionResult check_ospa(std::uint64_t seed) {
    return timed(9, "ospa metric suite", [&](std::ostream& os) {
        Rng rng(seed);
        std::uniform_real_distribution<double> up(-150.0, 150.0);
        std::uniform_int_distribution<int> size6(0, 6), size5(0, 5);
        const auto draw = [&](int n) {
            std::vector<Eigen::Vector2d> v;
            for (int i = 0; i < n; ++i) v.emplace_back(up(rng), up(rng));
            return v;
        };
        OspaParams params;
        double brute = 0.0;
        for (int i = 0; i < 2000; ++i) {
            params.order = i % 2 ? 1.0 : 2.0;
            const auto x = draw(size6(rng));
            const auto y = draw(size6(rng));
            brute = std::max(brute, std::abs(ospa(x, y, params) - oracle::brute_force_ospa(x, y, params.cutoff, params.order)));
        }
        double sym = 0.0, tri = 0.0, bound = 0.0, self = 0.0;
        for (int i = 0; i < 10000; ++i) {
            params.order = 1.0 + (i % 3);
            const auto x = draw(size5(rng));
            const auto y = draw(size5(rng));
            const auto z = draw(size5(rng));
            const double xy = ospa(x, y, params), yx = ospa(y, x, params);
            const double xz = ospa(x, z, params), yz = ospa(y, z, params);
            sym = std::max(sym, std::abs(xy - yx));
            tri = std::max(tri, xz - (xy + yz));
            bound = std::max({bound, xy - params.cutoff, xz - params.cutoff, yz - params.cutoff});
            self = std::max(self, ospa(x, x, params));
        }
        params.order = 2.0;
        const std::vector<Eigen::Vector2d> none;
        const auto three = draw(3);
        const std::vector<Eigen::Vector2d> a{{0.0, 0.0}}, b{{3.0, 4.0}};
        const bool edges = ospa(none, none, params) == 0.0 && ospa(none, three, params) == params.cutoff &&
                           ospa(three, none, params) == params.cutoff &&
                           std::abs(ospa(a, b, OspaParams{100.0, 1.0}) - 5.0) < 1e-12;
        os << "brute-force gap " << brute << ", symmetry " << sym << ", triangle slack " << tri << ", bound excess "
           << bound << ", self " << self << ", boundary cases " << (edges ? "ok" : "failed");
        return brute < 1e-9 && sym < 1e-12 && tri < 1e-9 && bound <= 1e-12 && self < 1e-9 && edges;
    });
}

CriterionResult check_strategy_ordering(const ScenarioConfig& cfg, int runs, std::uint64_t seed, int threads) {
    return timed(7, "strategy ordering over Monte Carlo runs", [&](std::ostream& os) {
        ExperimentOptions opt;
        opt.runs = runs;
        opt.base_seed = seed;
        opt.threads = threads;
        std::map<Strategy, StrategySummary> s;
        for (auto st : {Strategy::random, Strategy::idm, Strategy::jdm}) {
            const auto recs = run_experiment(cfg, st, opt);
            s[st] = summarize(cfg, st, recs);
        }
        const auto jr = paired_comparison(s[Strategy::jdm], s[Strategy::random]);
        const auto ir = paired_comparison(s[Strategy::idm], s[Strategy::random]);
        const double mj = s[Strategy::jdm].final_window_mean;
        const double mi = s[Strategy::idm].final_window_mean;
        const double mr = s[Strategy::random].final_window_mean;
        os << "final-window mean OSPA random " << mr << ", idm " << mi << ", jdm " << mj << "; jdm<random t="
           << jr.t_statistic << " p=" << jr.p_value << "; idm<random t=" << ir.t_statistic << " p=" << ir.p_value
           << "; failed runs " << s[Strategy::random].failures.size() << "/" << s[Strategy::idm].failures.size() << "/"
           << s[Strategy::jdm].failures.size();
        return jr.pairs == static_cast<std::size_t>(runs) && ir.pairs == static_cast<std::size_t>(runs) &&
               jr.p_value < 0.05 && ir.p_value < 0.05 && mj <= 1.1 * mi;
    });
}

std::vector<CriterionResult> run_fast_suite() {
    return {check_cs_oracle(),       check_divergence_axioms(),  check_gci(),  check_filter_oracle(),
            check_sensor_statistics(), check_control_accounting(), check_ospa()};
}

}  // namespace lrfs::validation
