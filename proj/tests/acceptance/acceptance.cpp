// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "lrfs/scenario.hpp"
#include "lrfs/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using lrfs::validation::CriterionResult;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

CriterionResult check_determinism(const std::string& cli, const fs::path& work, const fs::path& scenario) {
    CriterionResult r{8, "determinism", false, "", 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    if (cli.empty() || !fs::exists(cli)) {
        r.detail = "lrfs executable not available";
        return r;
    }
    std::vector<fs::path> dirs;
    for (int threads : {1, 2}) {
        const auto dir = work / ("compare_t" + std::to_string(threads));
        fs::remove_all(dir);
        const std::string cmd = quote(cli) + " compare --runs 5 --seed 7 --quiet --threads " + std::to_string(threads) +
                                (scenario.empty() ? std::string() : " --config " + quote(scenario.string())) + " --out " + quote(dir.string()) +
                                " > " + quote((work / ("compare_t" + std::to_string(threads) + ".json")).string());
        if (std::system(cmd.c_str()) != 0) {
            r.detail = "compare exited nonzero (threads " + std::to_string(threads) + ")";
            return r;
        }
        dirs.push_back(dir);
    }
    std::vector<fs::path> files{"summary.json"};
    for (const char* s : {"random", "idm", "jdm"})
        for (const char* f : {"runs.csv", "decisions.csv", "estimates.csv"}) files.push_back(fs::path(s) / f);
    std::size_t identical = 0;
    std::string mismatch;
    for (const auto& f : files) {
        const auto a = slurp(dirs[0] / f);
        if (!a.empty() && a == slurp(dirs[1] / f))
            ++identical;
        else if (mismatch.empty())
            mismatch = f.string();
    }
    r.passed = identical == files.size();
    r.detail = std::to_string(identical) + "/" + std::to_string(files.size()) + " files identical across --threads 1/2" +
               (mismatch.empty() ? "" : ", first mismatch " + mismatch);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lrfs acceptance suite"};
    std::string cli, work = "acceptance_work", scenario;
    int runs = 25;
    std::uint64_t seed = 2026;
    app.add_option("--cli", cli, "Path to the lrfs executable");
    app.add_option("--work", work, "Scratch directory");
    app.add_option("--scenario", scenario, "Scenario JSON for the Monte Carlo criteria")->check(CLI::ExistingFile);
    app.add_option("--runs", runs, "Monte Carlo runs per strategy");
    app.add_option("--seed", seed, "Base seed of the strategy comparison");
    CLI11_PARSE(app, argc, argv);

    fs::create_directories(work);
    const auto cfg = scenario.empty() ? lrfs::default_scenario() : lrfs::load_scenario(scenario);
    const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    std::vector<CriterionResult> results = lrfs::validation::run_fast_suite();
    results.push_back(lrfs::validation::check_strategy_ordering(cfg, runs, seed, threads));
    results.push_back(check_determinism(cli, work, scenario.empty() ? fs::path() : fs::path(scenario)));
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.name << " (" << r.seconds
                  << " s): " << r.detail << std::endl;
    }
    return all ? 0 : 1;
}
