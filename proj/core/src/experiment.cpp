#include "lrfs/experiment.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/format.hpp"
#include "lrfs/ospa.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

namespace lrfs {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t strategy_code(Strategy s) { return static_cast<std::uint64_t>(s) + 1; }

SensorPose pose_of(const SensorModel& s) { return SensorPose{s.position, s.heading_deg}; }

Decision random_decision(const ControlActionGrid& grid, std::uint64_t seed) {
    Rng rng(seed);
    Decision d;
    for (const auto& set : grid.per_sensor) {
        std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
        d.actions.push_back(set[pick(rng)]);
    }
    return d;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + p.string());
    return out;
}

}  // namespace

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::random: return "random";
        case Strategy::idm: return "idm";
        case Strategy::jdm: return "jdm";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "random") return Strategy::random;
    if (name == "idm") return Strategy::idm;
    if (name == "jdm") return Strategy::jdm;
    throw ConfigError("unknown strategy '" + std::string(name) + "' (expected random, idm or jdm)");
}

TrackerState TrackerState::initial(std::size_t sensors) {
    TrackerState s;
    s.locals.assign(sensors, DeltaGlmbDensity::empty_set());
    s.fused = MDeltaGlmbDensity::empty_set();
    return s;
}

ScanCycleResult run_scan_cycle(TrackerState& state, std::span<const MeasurementSet> measurements,
                               std::span<const SensorModel> sensors, const ScenarioConfig& cfg, int scan) {
    const auto motion = cfg.motion();
    ScanCycleResult out;
    std::vector<MDeltaGlmbDensity> marginals;
    for (std::size_t i = 0; i < state.locals.size(); ++i) {
        UpdateStats stats;
        const auto predicted = predict(state.locals[i], motion, cfg.birth, cfg.filter, scan);
        state.locals[i] = update(predicted, measurements[i], sensors[i], cfg.filter, &stats);
        if (stats.fell_back_to_missed) ++out.missed_fallbacks;
        marginals.push_back(marginalize_to_mdglmb(state.locals[i], cfg.reduction));
    }
    try {
        state.fused = fuse_mdglmb(marginals, cfg.fusion, cfg.reduction);
    } catch (const FusionFailure&) {
        spdlog::warn("scan {}: local densities share no label set; using sensor 0", scan);
        state.fused = marginals.front();
        out.fusion_fallback = true;
    }
    if (cfg.fused_feedback && !out.fusion_fallback) {
        const auto shared = to_delta_glmb(state.fused);
        for (auto& local : state.locals) local = shared;
    }
    out.estimate = map_estimate(state.fused);
    return out;
}

std::uint64_t SeedPlan::control(int scan) const { return derive_seed({run, 3, static_cast<std::uint64_t>(scan)}); }

std::uint64_t SeedPlan::random_action(int scan) const {
    return derive_seed({run, 4, static_cast<std::uint64_t>(scan)});
}

SeedPlan seed_plan(std::uint64_t base_seed, int run, Strategy strategy, bool paired_measurement_noise) {
    SeedPlan p;
    p.run = derive_seed({base_seed, static_cast<std::uint64_t>(run)});
    p.truth = derive_seed({p.run, 1});
    p.measurement = derive_seed({p.run, 2, paired_measurement_noise ? 0 : strategy_code(strategy)});
    return p;
}

RunRecord run_single(const ScenarioConfig& cfg, Strategy strategy, int run, std::uint64_t base_seed) {
    const auto t0 = Clock::now();
    RunRecord rec;
    rec.run = run;
    const auto seeds = seed_plan(base_seed, run, strategy, cfg.paired_measurement_noise);
    rec.seed = seeds.run;
    try {
        const auto motion = cfg.motion();
        const auto grid = cfg.action_grid();
        Rng truth_rng(seeds.truth);
        Rng meas_rng(seeds.measurement);

        std::vector<SensorModel> sensors;
        for (const auto& s : cfg.sensors) sensors.push_back(s.model);
        TrackerState state = TrackerState::initial(sensors.size());
        TruthFrame frame;
        bool moving = false;

        for (int k = 1; k <= cfg.num_scans; ++k) {
            if (k > 1)
                for (auto& s : sensors) s = advance(s, cfg.period_s);
            frame = propagate_targets(frame, cfg.targets, motion, cfg.sigma_v_mps2, truth_rng,
                                      cfg.truth_process_noise);
            frame.sensors.clear();
            for (const auto& s : sensors) frame.sensors.push_back(pose_of(s));

            std::vector<MeasurementSet> z;
            for (const auto& s : sensors) z.push_back(measure(frame.targets, s, meas_rng).z);

            const auto cycle = run_scan_cycle(state, z, sensors, cfg, k);

            ScanRecord sr;
            sr.scan = k;
            sr.truth = frame.targets;
            sr.estimates = cycle.estimate;
            sr.sensors = frame.sensors;
            sr.fusion_fallback = cycle.fusion_fallback;
            const auto est = positions(sr.estimates);
            const auto tru = positions(sr.truth);
            sr.ospa = ospa(est, tru, cfg.ospa);
            rec.scans.push_back(std::move(sr));

            if (std::find(cfg.decision_scans.begin(), cfg.decision_scans.end(), k) == cfg.decision_scans.end())
                continue;
            if (!moving) {
                for (std::size_t i = 0; i < sensors.size(); ++i) sensors[i].speed_mps = cfg.sensors[i].cruise_speed_mps;
                moving = true;
            }
            const auto td = Clock::now();
            DecisionRecord dr;
            dr.scan = k;
            if (strategy == Strategy::random) {
                dr.decision = random_decision(grid, seeds.random_action(k));
            } else {
                ControlModels models{cfg.step_motion(), cfg.birth, sensors, cfg.fusion, cfg.reduction, k};
                dr.decision = strategy == Strategy::jdm
                                  ? jdm_select(state.fused, state.locals, grid, cfg.control, models, seeds.control(k))
                                  : idm_select(state.fused, state.locals, grid, cfg.control, models, seeds.control(k));
            }
            dr.seconds = seconds_since(td);
            for (std::size_t i = 0; i < sensors.size(); ++i) sensors[i] = apply_action(sensors[i], dr.decision.actions[i]);
            rec.decisions.push_back(std::move(dr));
        }
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
        spdlog::error("{} run {} failed: {}", to_string(strategy), run, e.what());
    }
    rec.seconds = seconds_since(t0);
    return rec;
}

std::vector<RunRecord> run_experiment(const ScenarioConfig& cfg, Strategy strategy, const ExperimentOptions& options) {
    cfg.validate();
    if (options.runs < 0) throw ConfigError("runs must be non-negative");
    std::vector<RunRecord> out(static_cast<std::size_t>(options.runs));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int r = next++; r < options.runs; r = next++) {
            out[static_cast<std::size_t>(r)] = run_single(cfg, strategy, r, options.base_seed);
            if (options.on_run_complete) options.on_run_complete(strategy, out[static_cast<std::size_t>(r)]);
        }
    };
    const int threads = std::clamp(options.threads, 1, std::max(options.runs, 1));
    if (threads == 1) {
        worker();
        return out;
    }
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    return out;
}

StrategySummary summarize(const ScenarioConfig& cfg, Strategy strategy, std::span<const RunRecord> runs) {
    StrategySummary s;
    s.strategy = strategy;
    const auto scans = static_cast<std::size_t>(cfg.num_scans);
    std::vector<double> sum(scans, 0.0), sum_sq(scans, 0.0);
    for (const auto& r : runs) {
        if (r.failed) {
            s.failures.emplace_back(r.run, r.error);
            continue;
        }
        ++s.runs_completed;
        s.completed_runs.push_back(r.run);
        double window = 0.0;
        for (const auto& sc : r.scans) {
            const auto k = static_cast<std::size_t>(sc.scan - 1);
            sum[k] += sc.ospa;
            sum_sq[k] += sc.ospa * sc.ospa;
            if (sc.scan > cfg.num_scans - cfg.final_window_scans) window += sc.ospa;
            if (sc.fusion_fallback) ++s.fusion_fallbacks;
        }
        for (const auto& d : r.decisions)
            if (d.decision.fallback) ++s.decision_fallbacks;
        s.final_window.push_back(window / cfg.final_window_scans);
    }
    const auto n = static_cast<double>(s.runs_completed);
    for (std::size_t k = 0; k < scans; ++k) {
        const double mean = n > 0 ? sum[k] / n : 0.0;
        const double var = n > 1 ? std::max(0.0, (sum_sq[k] - n * mean * mean) / (n - 1.0)) : 0.0;
        s.mean_ospa.push_back(mean);
        s.std_ospa.push_back(std::sqrt(var));
    }
    double total = 0.0;
    for (double v : s.final_window) total += v;
    s.final_window_mean = s.final_window.empty() ? 0.0 : total / static_cast<double>(s.final_window.size());
    return s;
}

PairedComparison paired_comparison(const StrategySummary& a, const StrategySummary& b) {
    PairedComparison c;
    c.a = a.strategy;
    c.b = b.strategy;
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.completed_runs.size(); ++i) {
        const auto it = std::find(b.completed_runs.begin(), b.completed_runs.end(), a.completed_runs[i]);
        if (it == b.completed_runs.end()) continue;
        diffs.push_back(a.final_window[i] - b.final_window[static_cast<std::size_t>(it - b.completed_runs.begin())]);
    }
    c.pairs = diffs.size();
    if (diffs.size() < 2) return c;
    const auto n = static_cast<double>(diffs.size());
    double mean = 0.0;
    for (double d : diffs) mean += d;
    mean /= n;
    double ss = 0.0;
    for (double d : diffs) ss += (d - mean) * (d - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    c.mean_difference = mean;
    if (sd == 0.0) {
        c.t_statistic = mean < 0 ? -std::numeric_limits<double>::infinity() : (mean > 0 ? std::numeric_limits<double>::infinity() : 0.0);
        c.p_value = mean < 0 ? 0.0 : (mean > 0 ? 1.0 : 0.5);
        return c;
    }
    c.t_statistic = mean / (sd / std::sqrt(n));
    boost::math::students_t dist(n - 1.0);
    c.p_value = boost::math::cdf(dist, c.t_statistic);
    return c;
}

json summary_json(const ScenarioConfig& cfg, std::uint64_t base_seed, std::span<const StrategyResult> results) {
    json j;
    j["scenario"] = scenario_to_json(cfg);
    j["base_seed"] = base_seed;
    j["ospa"] = {{"cutoff_m", cfg.ospa.cutoff}, {"order", cfg.ospa.order},
                 {"final_window_scans", cfg.final_window_scans}};
    j["strategies"] = json::object();
    std::vector<StrategySummary> sums;
    for (const auto& r : results) {
        const auto s = summarize(cfg, r.strategy, r.runs);
        json f = json::array();
        for (const auto& [run, err] : s.failures) f.push_back({{"run", run}, {"error", err}});
        json per_run = json::array();
        for (std::size_t i = 0; i < s.completed_runs.size(); ++i)
            per_run.push_back({{"run", s.completed_runs[i]}, {"final_window_mean_ospa", s.final_window[i]}});
        j["strategies"][std::string(to_string(r.strategy))] = {
            {"runs_requested", r.runs.size()},
            {"runs_completed", s.runs_completed},
            {"runs_failed", s.failures.size()},
            {"failures", f},
            {"mean_ospa_per_scan", s.mean_ospa},
            {"std_ospa_per_scan", s.std_ospa},
            {"final_window_mean_ospa", s.final_window_mean},
            {"per_run", per_run},
            {"decision_fallbacks", s.decision_fallbacks},
            {"fusion_fallbacks", s.fusion_fallbacks},
        };
        sums.push_back(s);
    }
    json cmp = json::array();
    for (const auto& a : sums)
        for (const auto& b : sums) {
            const bool wanted = (a.strategy == Strategy::jdm && b.strategy != Strategy::jdm) ||
                                (a.strategy == Strategy::idm && b.strategy == Strategy::random);
            if (!wanted) continue;
            const auto c = paired_comparison(a, b);
            cmp.push_back({{"hypothesis", std::string(to_string(a.strategy)) + " < " + std::string(to_string(b.strategy))},
                           {"pairs", c.pairs},
                           {"mean_difference", c.mean_difference},
                           {"t_statistic", std::isfinite(c.t_statistic) ? json(c.t_statistic) : json(fmt_double(c.t_statistic))},
                           {"p_value_one_sided", c.p_value}});
        }
    j["paired_tests"] = cmp;
    return j;
}

void write_outputs(const std::filesystem::path& dir, const ScenarioConfig& cfg, std::uint64_t base_seed,
                   std::span<const StrategyResult> results) {
    std::filesystem::create_directories(dir);
    const std::size_t n_sensors = cfg.sensors.size();
    json timing;
    for (const auto& r : results) {
        const auto sub = dir / std::string(to_string(r.strategy));
        std::filesystem::create_directories(sub);

        auto runs_csv = open_out(sub / "runs.csv");
        runs_csv << "run,scan,ospa,cardinality_true,cardinality_est,fusion_fallback";
        for (std::size_t i = 0; i < n_sensors; ++i) runs_csv << ",s" << i << "_x_m,s" << i << "_y_m,s" << i << "_heading_deg";
        for (std::size_t i = 0; i < n_sensors; ++i) runs_csv << ",s" << i << "_action_deg";
        runs_csv << '\n';

        auto dec_csv = open_out(sub / "decisions.csv");
        dec_csv << "run,scan,scope,candidate";
        for (std::size_t i = 0; i < n_sensors; ++i) dec_csv << ",s" << i << "_action_deg";
        dec_csv << ",expected_reward,selected\n";

        auto est_csv = open_out(sub / "estimates.csv");
        est_csv << "run,scan,kind,label,px_m,py_m,vx_mps,vy_mps\n";

        const auto grid = cfg.action_grid();
        json run_times = json::array();
        for (const auto& run : r.runs) {
            run_times.push_back({{"run", run.run}, {"seconds", run.seconds}});
            for (const auto& sc : run.scans) {
                runs_csv << run.run << ',' << sc.scan << ',' << fmt_double(sc.ospa) << ',' << sc.truth.size() << ','
                         << sc.estimates.size() << ',' << (sc.fusion_fallback ? 1 : 0);
                for (const auto& p : sc.sensors)
                    runs_csv << ',' << fmt_double(p.position.x()) << ',' << fmt_double(p.position.y()) << ','
                             << fmt_double(p.heading_deg);
                const auto d = std::find_if(run.decisions.begin(), run.decisions.end(),
                                            [&](const DecisionRecord& x) { return x.scan == sc.scan; });
                for (std::size_t i = 0; i < n_sensors; ++i) {
                    runs_csv << ',';
                    if (d != run.decisions.end()) runs_csv << fmt_double(d->decision.actions[i].heading_change_deg);
                }
                runs_csv << '\n';
                for (const auto& [kind, set] : {std::pair{"truth", &sc.truth}, std::pair{"estimate", &sc.estimates}})
                    for (const auto& x : *set)
                        est_csv << run.run << ',' << sc.scan << ',' << kind << ',' << x.label.to_string() << ','
                                << fmt_double(x.state(0)) << ',' << fmt_double(x.state(1)) << ','
                                << fmt_double(x.state(2)) << ',' << fmt_double(x.state(3)) << '\n';
            }
            for (const auto& dr : run.decisions) {
                const auto& dec = dr.decision;
                const auto write_row = [&](std::string_view scope, std::size_t cand,
                                           const std::vector<std::optional<double>>& acts, std::optional<double> reward,
                                           bool selected) {
                    dec_csv << run.run << ',' << dr.scan << ',' << scope << ',' << cand;
                    for (const auto& a : acts) {
                        dec_csv << ',';
                        if (a) dec_csv << fmt_double(*a);
                    }
                    dec_csv << ',';
                    if (reward) dec_csv << fmt_double(*reward);
                    dec_csv << ',' << (selected ? 1 : 0) << '\n';
                };
                if (r.strategy == Strategy::jdm) {
                    for (std::size_t f = 0; f < dec.expected_rewards.size(); ++f) {
                        const auto idx = grid.joint_indices(f);
                        std::vector<std::optional<double>> acts;
                        bool selected = !dec.fallback;
                        for (std::size_t i = 0; i < n_sensors; ++i) {
                            acts.emplace_back(grid.per_sensor[i][idx[i]].heading_change_deg);
                            selected = selected && grid.per_sensor[i][idx[i]] == dec.actions[i];
                        }
                        write_row("joint", f, acts, dec.expected_rewards[f], selected);
                    }
                } else if (r.strategy == Strategy::idm) {
                    std::size_t offset = 0;
                    for (std::size_t i = 0; i < n_sensors; ++i) {
                        for (std::size_t a = 0; a < grid.per_sensor[i].size(); ++a) {
                            std::vector<std::optional<double>> acts(n_sensors);
                            acts[i] = grid.per_sensor[i][a].heading_change_deg;
                            write_row("sensor" + std::to_string(i), a, acts, dec.expected_rewards.at(offset + a),
                                      !dec.fallback && grid.per_sensor[i][a] == dec.actions[i]);
                        }
                        offset += grid.per_sensor[i].size();
                    }
                } else {
                    std::vector<std::optional<double>> acts;
                    for (const auto& a : dec.actions) acts.emplace_back(a.heading_change_deg);
                    write_row("random", 0, acts, std::nullopt, true);
                }
            }
        }
        json decision_times = json::array();
        for (const auto& run : r.runs)
            for (const auto& dr : run.decisions)
                decision_times.push_back({{"run", run.run}, {"scan", dr.scan}, {"seconds", dr.seconds},
                                          {"pseudo_update_chains", dr.decision.stats.pseudo_update_chains},
                                          {"fusions", dr.decision.stats.fusions},
                                          {"reward_evaluations", dr.decision.stats.reward_evaluations}});
        timing[std::string(to_string(r.strategy))] = {
            {"total_seconds", r.seconds}, {"runs", run_times}, {"decisions", decision_times}};
    }
    auto summary = open_out(dir / "summary.json");
    summary << summary_json(cfg, base_seed, results).dump(2) << '\n';
    auto timing_out = open_out(dir / "timing.json");
    timing_out << timing.dump(2) << '\n';
}

}  // namespace lrfs
