#include "lrfs/errors.hpp"
#include "lrfs/experiment.hpp"
#include "lrfs/scenario.hpp"
#include "lrfs/validation.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using lrfs::Strategy;
using Clock = std::chrono::steady_clock;

struct Options {
    std::string config;
    std::string strategy = "jdm";
    int runs = 1;
    std::uint64_t seed = 0;
    std::string out = "out";
    int threads = 0;
    bool paired = false;
    bool full = false;
    bool quiet = false;
};

void print_error(std::string_view kind, std::string_view message) {
    nlohmann::json j{{"error", {{"kind", kind}, {"message", message}}}};
    std::cout << j.dump() << std::endl;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

lrfs::ScenarioConfig load_config(const Options& o) {
    auto cfg = o.config.empty() ? lrfs::default_scenario() : lrfs::load_scenario(o.config);
    if (o.paired) cfg.paired_measurement_noise = true;
    cfg.validate();
    return cfg;
}

void check_counts(const Options& o) {
    if (o.runs < 1) throw lrfs::ConfigError("--runs must be at least 1");
}

int run_strategies(const Options& o, std::span<const Strategy> strategies) {
    check_counts(o);
    const auto cfg = load_config(o);
    lrfs::ExperimentOptions opt;
    opt.runs = o.runs;
    opt.base_seed = o.seed;
    opt.threads = resolve_threads(o.threads);

    std::atomic<int> done{0};
    const int total = o.runs * static_cast<int>(strategies.size());
    opt.on_run_complete = [&](Strategy s, const lrfs::RunRecord& r) {
        const int n = ++done;
        if (r.failed)
            spdlog::warn("{} run {} failed: {}", lrfs::to_string(s), r.run, r.error);
        else
            spdlog::info("[{}/{}] {} run {} finished in {:.1f} s", n, total, lrfs::to_string(s), r.run, r.seconds);
    };

    std::vector<lrfs::StrategyResult> results;
    for (Strategy s : strategies) {
        const auto t0 = Clock::now();
        auto runs = lrfs::run_experiment(cfg, s, opt);
        results.push_back({s, std::move(runs), std::chrono::duration<double>(Clock::now() - t0).count()});
    }
    lrfs::write_outputs(o.out, cfg, o.seed, results);

    const auto summary = lrfs::summary_json(cfg, o.seed, results);
    nlohmann::json brief{{"out", o.out}, {"strategies", nlohmann::json::object()}};
    for (const auto& [name, s] : summary["strategies"].items())
        brief["strategies"][name] = {{"runs_completed", s["runs_completed"]},
                                     {"final_window_mean_ospa", s["final_window_mean_ospa"]}};
    if (summary.contains("paired_tests")) brief["paired_tests"] = summary["paired_tests"];
    std::cout << brief.dump(2) << std::endl;
    return 0;
}

nlohmann::json to_json(const lrfs::validation::CriterionResult& r) {
    return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}};
}

int run_validate(const Options& o) {
    auto results = lrfs::validation::run_fast_suite();
    if (o.full) {
        check_counts(o);
        const auto cfg = load_config(o);
        results.push_back(lrfs::validation::check_strategy_ordering(cfg, o.runs, o.seed, resolve_threads(o.threads)));
    }
    nlohmann::json report{{"criteria", nlohmann::json::array()}};
    bool ok = true;
    for (const auto& r : results) {
        report["criteria"].push_back(to_json(r));
        ok = ok && r.passed;
    }
    report["passed"] = ok;
    std::cout << report.dump(2) << std::endl;
    if (!o.out.empty()) {
        std::filesystem::create_directories(o.out);
        std::ofstream(std::filesystem::path(o.out) / "validation.json") << report.dump(2) << '\n';
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    auto logger = spdlog::stderr_color_mt("lrfs");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%H:%M:%S] %^%l%$ %v");

    CLI::App app{"Multi-sensor control for labeled RFS multi-target tracking"};
    app.require_subcommand(1);
    Options o;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Scenario JSON (default: built-in scenario)")->check(CLI::ExistingFile);
        sub->add_option("--runs", o.runs, "Monte Carlo runs");
        sub->add_option("--seed", o.seed, "Base seed");
        sub->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
        sub->add_flag("--quiet", o.quiet, "Only log warnings");
    };

    auto* simulate = app.add_subcommand("simulate", "Run one strategy");
    common(simulate);
    simulate->add_option("--strategy", o.strategy, "random, idm or jdm");
    simulate->add_option("--out", o.out, "Output directory");
    simulate->add_flag("--paired-noise", o.paired, "Share measurement noise across strategies");

    auto* compare = app.add_subcommand("compare", "Run all three strategies on shared truth seeds");
    common(compare);
    compare->add_option("--out", o.out, "Output directory");
    compare->add_flag("--paired-noise", o.paired, "Share measurement noise across strategies");

    auto* validate = app.add_subcommand("validate", "Run the oracle and property checks");
    common(validate);
    validate->add_option("--out", o.out, "Directory for validation.json (empty: stdout only)");
    validate->add_flag("--full", o.full, "Also run the Monte Carlo strategy ordering check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage_error", e.what());
        return 2;
    }
    if (validate->parsed() && validate->count("--out") == 0) o.out.clear();
    spdlog::set_level(o.quiet ? spdlog::level::warn : spdlog::level::info);

    try {
        if (simulate->parsed()) {
            const Strategy s = lrfs::parse_strategy(o.strategy);
            return run_strategies(o, std::span(&s, 1));
        }
        if (compare->parsed()) {
            constexpr Strategy all[] = {Strategy::random, Strategy::idm, Strategy::jdm};
            return run_strategies(o, all);
        }
        return run_validate(o);
    } catch (const lrfs::ConfigError& e) {
        print_error(e.kind(), e.what());
        return 2;
    } catch (const lrfs::Error& e) {
        print_error(e.kind(), e.what());
        return 1;
    } catch (const nlohmann::json::exception& e) {
        print_error("config_error", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("internal_error", e.what());
        return 1;
    }
}
