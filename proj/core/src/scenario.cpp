#include "lrfs/scenario.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace lrfs {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
    for (const auto& [k, v] : j.items())
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError("unknown key '" + k + "' in " + std::string(where));
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

Eigen::Vector2d read_xy(const json& j, const char* key, Eigen::Vector2d fallback) {
    if (!j.contains(key)) return fallback;
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 2) throw ConfigError(std::string(key) + " must be a two-element array");
    return {a[0].get<double>(), a[1].get<double>()};
}

json xy(const Eigen::Vector2d& v) { return json::array({v.x(), v.y()}); }

BirthTrack make_birth(int index, double r, Eigen::Vector2d pos, Eigen::Vector2d vel, double std_pos, double std_vel) {
    GaussianComponent c;
    c.weight = 1.0;
    c.mean = KinematicState{pos.x(), vel.x(), pos.y(), vel.y()}.to_vector();
    c.covariance = Matrix::Zero(4, 4);
    c.covariance.diagonal() << std_pos * std_pos, std_pos * std_pos, std_vel * std_vel, std_vel * std_vel;
    return BirthTrack{index, r, {c}};
}

}  // namespace

void ScenarioConfig::validate() const {
    if (!(period_s > 0.0) || sigma_v_mps2 < 0.0) throw ConfigError("motion parameters out of range");
    if (!(survival_probability > 0.0) || survival_probability > 1.0) throw ConfigError("survival probability must be in (0, 1]");
    if (sensors.empty()) throw ConfigError("scenario needs at least one sensor");
    fusion.validate(sensors.size());
    for (const auto& s : sensors) {
        const auto& m = s.model;
        if (m.sigma0_m < 0 || m.eta_r_per_m < 0 || m.theta0_rad < 0 || m.eta_theta_per_m < 0 || m.sigma_d_m < 0 ||
            m.clutter_rate < 0 || s.cruise_speed_mps < 0)
            throw ConfigError("sensor parameters must be non-negative");
    }
    for (const auto& b : birth.tracks) {
        if (!(b.existence > 0.0) || b.existence > 1.0) throw ConfigError("birth existence must be in (0, 1]");
        if (b.components.empty()) throw ConfigError("birth track without components");
    }
    std::set<TrackLabel> labels;
    for (const auto& t : targets) {
        if (!labels.insert(t.label).second) throw ConfigError("duplicate target label " + t.label.to_string());
        if (t.death_scan <= t.birth_scan) throw ConfigError("target dies before it is born");
    }
    if (filter.max_hypotheses < 1 || control.pseudo_filter.max_hypotheses < 1)
        throw ConfigError("max_hypotheses must be at least 1");
    if (filter.hypothesis_weight_floor < 0.0 || filter.hypothesis_weight_floor >= 1.0)
        throw ConfigError("hypothesis weight floor must be in [0, 1)");
    if (control.horizon < 1 || control.num_samples < 1 || !(control.step_s > 0.0) ||
        !(control.hypervolume.value > 0.0))
        throw ConfigError("control parameters out of range");
    if (!(action_step_deg > 0.0) || action_step_deg > 360.0) throw ConfigError("action step must be in (0, 360]");
    if (num_scans < 1) throw ConfigError("num_scans must be positive");
    for (int d : decision_scans)
        if (d < 1 || d > num_scans) throw ConfigError("decision scan outside the scan range");
    if (!std::is_sorted(decision_scans.begin(), decision_scans.end())) throw ConfigError("decision scans must be sorted");
    if (!(ospa.cutoff > 0.0) || ospa.order < 1.0) throw ConfigError("OSPA needs cutoff > 0 and order >= 1");
    if (final_window_scans < 1 || final_window_scans > num_scans) throw ConfigError("final window outside the run");
}

MotionModel ScenarioConfig::motion() const {
    return MotionModel::constant_velocity(period_s, sigma_v_mps2, survival_probability);
}

MotionModel ScenarioConfig::step_motion() const {
    return MotionModel::constant_velocity(control.step_s, sigma_v_mps2, survival_probability);
}

ControlActionGrid ScenarioConfig::action_grid() const {
    return ControlActionGrid::uniform(sensors.size(), action_step_deg);
}

ScenarioConfig default_scenario() {
    ScenarioConfig c;
    struct Seed {
        Eigen::Vector2d p, v;
    };
    const Seed seeds[] = {
        {{-600.0, 300.0}, {10.0, -3.0}},
        {{400.0, 600.0}, {-6.0, -8.0}},
        {{-300.0, -400.0}, {8.0, 6.0}},
        {{500.0, -200.0}, {-10.0, 4.0}},
    };
    int i = 0;
    for (const auto& s : seeds) {
        c.targets.push_back(TargetSpec{{1, i}, KinematicState{s.p.x(), s.v.x(), s.p.y(), s.v.y()}, 1, 41});
        c.birth.tracks.push_back(make_birth(i, 0.03, s.p, Eigen::Vector2d::Zero(), 50.0, 25.0));
        ++i;
    }
    for (double x : {-1200.0, 1200.0}) {
        SensorSpec s;
        s.model.position = {x, -1200.0};
        s.model.heading_deg = 90.0;
        c.sensors.push_back(s);
    }
    for (auto& s : c.sensors) s.model.region = c.region;
    c.fusion = FusionWeights::uniform(c.sensors.size());
    c.reduction = c.filter.reduction();
    // Roughly (4 pi)^2 (sigma_p sigma_v)^2 for a confirmed track, so K times the
    // track self-overlap is near one.
    c.control.hypervolume = HypervolumeUnit{1e8};
    return c;
}

ScenarioConfig scenario_from_json(const json& j) {
    ScenarioConfig c = default_scenario();
    only_keys(j, "scenario",
              {"name", "region_m", "motion", "targets", "birth", "sensors", "filter", "control", "schedule", "ospa",
               "seeding"});
    read(j, "name", c.name);

    if (j.contains("region_m")) {
        const auto& r = j.at("region_m");
        only_keys(r, "region_m", {"x_min", "x_max", "y_min", "y_max"});
        read(r, "x_min", c.region.x_min);
        read(r, "x_max", c.region.x_max);
        read(r, "y_min", c.region.y_min);
        read(r, "y_max", c.region.y_max);
        if (!(c.region.x_max > c.region.x_min) || !(c.region.y_max > c.region.y_min))
            throw ConfigError("empty surveillance region");
    }
    if (j.contains("motion")) {
        const auto& m = j.at("motion");
        only_keys(m, "motion", {"period_s", "sigma_v_mps2", "survival_probability", "truth_process_noise"});
        read(m, "period_s", c.period_s);
        read(m, "sigma_v_mps2", c.sigma_v_mps2);
        read(m, "survival_probability", c.survival_probability);
        read(m, "truth_process_noise", c.truth_process_noise);
    }
    if (j.contains("targets")) {
        c.targets.clear();
        std::map<int, int> per_scan;
        for (const auto& t : j.at("targets")) {
            only_keys(t, "target", {"birth_scan", "death_scan", "position_m", "velocity_mps"});
            TargetSpec s;
            read(t, "birth_scan", s.birth_scan);
            read(t, "death_scan", s.death_scan);
            const auto p = read_xy(t, "position_m", Eigen::Vector2d::Zero());
            const auto v = read_xy(t, "velocity_mps", Eigen::Vector2d::Zero());
            s.initial = KinematicState{p.x(), v.x(), p.y(), v.y()};
            s.label = TrackLabel{s.birth_scan, per_scan[s.birth_scan]++};
            c.targets.push_back(s);
        }
    }
    if (j.contains("birth")) {
        c.birth.tracks.clear();
        int index = 0;
        for (const auto& b : j.at("birth")) {
            only_keys(b, "birth", {"existence", "position_m", "velocity_mps", "std_position_m", "std_velocity_mps"});
            double r = 0.03, sp = 50.0, sv = 25.0;
            read(b, "existence", r);
            read(b, "std_position_m", sp);
            read(b, "std_velocity_mps", sv);
            if (!(sp > 0.0) || !(sv > 0.0)) throw ConfigError("birth standard deviations must be positive");
            c.birth.tracks.push_back(make_birth(index++, r, read_xy(b, "position_m", Eigen::Vector2d::Zero()),
                                                read_xy(b, "velocity_mps", Eigen::Vector2d::Zero()), sp, sv));
        }
    }
    if (j.contains("sensors")) {
        c.sensors.clear();
        std::vector<double> weights;
        bool any_weight = false;
        for (const auto& s : j.at("sensors")) {
            only_keys(s, "sensor",
                      {"position_m", "heading_deg", "cruise_speed_mps", "sigma0_m", "eta_r_per_m", "theta0_rad",
                       "eta_theta_per_m", "sigma_d_m", "clutter_rate", "fusion_weight"});
            SensorSpec spec;
            auto& m = spec.model;
            m.position = read_xy(s, "position_m", Eigen::Vector2d::Zero());
            read(s, "heading_deg", m.heading_deg);
            m.heading_deg = wrap_degrees(m.heading_deg);
            read(s, "cruise_speed_mps", spec.cruise_speed_mps);
            read(s, "sigma0_m", m.sigma0_m);
            read(s, "eta_r_per_m", m.eta_r_per_m);
            read(s, "theta0_rad", m.theta0_rad);
            read(s, "eta_theta_per_m", m.eta_theta_per_m);
            read(s, "sigma_d_m", m.sigma_d_m);
            read(s, "clutter_rate", m.clutter_rate);
            double w = 0.0;
            if (s.contains("fusion_weight")) {
                any_weight = true;
                read(s, "fusion_weight", w);
            }
            weights.push_back(w);
            c.sensors.push_back(spec);
        }
        c.fusion = any_weight ? FusionWeights{weights} : FusionWeights::uniform(std::max<std::size_t>(c.sensors.size(), 1));
    }
    for (auto& s : c.sensors) {
        s.model.region = c.region;
        s.model.speed_mps = 0.0;
    }
    if (j.contains("filter")) {
        const auto& f = j.at("filter");
        only_keys(f, "filter",
                  {"max_hypotheses", "hypothesis_weight_floor", "max_components_per_track", "merge_distance",
                   "association", "fused_feedback"});
        read(f, "fused_feedback", c.fused_feedback);
        read(f, "max_hypotheses", c.filter.max_hypotheses);
        read(f, "hypothesis_weight_floor", c.filter.hypothesis_weight_floor);
        read(f, "max_components_per_track", c.filter.max_components_per_track);
        read(f, "merge_distance", c.filter.merge_distance);
        std::string mode = "ranked";
        read(f, "association", mode);
        if (mode == "ranked")
            c.filter.association = AssociationMode::ranked;
        else if (mode == "exhaustive")
            c.filter.association = AssociationMode::exhaustive;
        else
            throw ConfigError("association must be 'ranked' or 'exhaustive'");
    }
    c.reduction = c.filter.reduction();
    if (j.contains("control")) {
        const auto& k = j.at("control");
        only_keys(k, "control",
                  {"horizon_steps", "step_s", "num_samples", "hypervolume_unit", "action_step_deg",
                   "pseudo_update_birth", "pseudo_max_hypotheses", "pseudo_weight_floor", "pseudo_max_components"});
        read(k, "horizon_steps", c.control.horizon);
        read(k, "step_s", c.control.step_s);
        read(k, "num_samples", c.control.num_samples);
        read(k, "hypervolume_unit", c.control.hypervolume.value);
        read(k, "action_step_deg", c.action_step_deg);
        read(k, "pseudo_update_birth", c.control.pseudo_update_birth);
        read(k, "pseudo_max_hypotheses", c.control.pseudo_filter.max_hypotheses);
        read(k, "pseudo_weight_floor", c.control.pseudo_filter.hypothesis_weight_floor);
        read(k, "pseudo_max_components", c.control.pseudo_filter.max_components_per_track);
    }
    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        only_keys(s, "schedule", {"num_scans", "decision_scans"});
        read(s, "num_scans", c.num_scans);
        read(s, "decision_scans", c.decision_scans);
    }
    if (j.contains("ospa")) {
        const auto& o = j.at("ospa");
        only_keys(o, "ospa", {"cutoff_m", "order", "final_window_scans"});
        read(o, "cutoff_m", c.ospa.cutoff);
        read(o, "order", c.ospa.order);
        read(o, "final_window_scans", c.final_window_scans);
    }
    if (j.contains("seeding")) {
        const auto& s = j.at("seeding");
        only_keys(s, "seeding", {"paired_measurement_noise"});
        read(s, "paired_measurement_noise", c.paired_measurement_noise);
    }
    c.validate();
    return c;
}

json scenario_to_json(const ScenarioConfig& c) {
    json j;
    j["name"] = c.name;
    j["region_m"] = {{"x_min", c.region.x_min}, {"x_max", c.region.x_max}, {"y_min", c.region.y_min},
                     {"y_max", c.region.y_max}};
    j["motion"] = {{"period_s", c.period_s},
                   {"sigma_v_mps2", c.sigma_v_mps2},
                   {"survival_probability", c.survival_probability},
                   {"truth_process_noise", c.truth_process_noise}};
    j["targets"] = json::array();
    for (const auto& t : c.targets)
        j["targets"].push_back({{"birth_scan", t.birth_scan},
                                {"death_scan", t.death_scan},
                                {"position_m", json::array({t.initial.px, t.initial.py})},
                                {"velocity_mps", json::array({t.initial.vx, t.initial.vy})}});
    j["birth"] = json::array();
    for (const auto& b : c.birth.tracks) {
        const auto& g = b.components.front();
        j["birth"].push_back({{"existence", b.existence},
                              {"position_m", json::array({g.mean(0), g.mean(1)})},
                              {"velocity_mps", json::array({g.mean(2), g.mean(3)})},
                              {"std_position_m", std::sqrt(g.covariance(0, 0))},
                              {"std_velocity_mps", std::sqrt(g.covariance(2, 2))}});
    }
    j["sensors"] = json::array();
    for (std::size_t i = 0; i < c.sensors.size(); ++i) {
        const auto& s = c.sensors[i];
        const auto& m = s.model;
        j["sensors"].push_back({{"position_m", xy(m.position)},
                                {"heading_deg", m.heading_deg},
                                {"cruise_speed_mps", s.cruise_speed_mps},
                                {"sigma0_m", m.sigma0_m},
                                {"eta_r_per_m", m.eta_r_per_m},
                                {"theta0_rad", m.theta0_rad},
                                {"eta_theta_per_m", m.eta_theta_per_m},
                                {"sigma_d_m", m.sigma_d_m},
                                {"clutter_rate", m.clutter_rate},
                                {"fusion_weight", c.fusion.omega.at(i)}});
    }
    j["filter"] = {{"max_hypotheses", c.filter.max_hypotheses},
                   {"hypothesis_weight_floor", c.filter.hypothesis_weight_floor},
                   {"max_components_per_track", c.filter.max_components_per_track},
                   {"merge_distance", c.filter.merge_distance},
                   {"association", c.filter.association == AssociationMode::ranked ? "ranked" : "exhaustive"},
                   {"fused_feedback", c.fused_feedback}};
    j["control"] = {{"horizon_steps", c.control.horizon},
                    {"step_s", c.control.step_s},
                    {"num_samples", c.control.num_samples},
                    {"hypervolume_unit", c.control.hypervolume.value},
                    {"action_step_deg", c.action_step_deg},
                    {"pseudo_update_birth", c.control.pseudo_update_birth},
                    {"pseudo_max_hypotheses", c.control.pseudo_filter.max_hypotheses},
                    {"pseudo_weight_floor", c.control.pseudo_filter.hypothesis_weight_floor},
                    {"pseudo_max_components", c.control.pseudo_filter.max_components_per_track}};
    j["schedule"] = {{"num_scans", c.num_scans}, {"decision_scans", c.decision_scans}};
    j["ospa"] = {{"cutoff_m", c.ospa.cutoff}, {"order", c.ospa.order}, {"final_window_scans", c.final_window_scans}};
    j["seeding"] = {{"paired_measurement_noise", c.paired_measurement_noise}};
    return j;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("scenario file is not valid JSON: " + std::string(e.what()));
    }
    return scenario_from_json(j);
}

}  // namespace lrfs
