#pragma once

#include "lrfs/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lrfs::validation {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Closed-form zeta against the brute-force set integral on random 1-D densities.
[[nodiscard]] CriterionResult check_cs_oracle(std::uint64_t seed = 1, int pairs = 50);
/// Symmetry, non-negativity and self-divergence on random 4-D densities, plus
/// the shifted-Gaussian closed form.
[[nodiscard]] CriterionResult check_divergence_axioms(std::uint64_t seed = 2, int pairs = 1000);
/// Information-form agreement, quadrature agreement for mixtures, idempotence
/// and permutation equivariance.
[[nodiscard]] CriterionResult check_gci(std::uint64_t seed = 3);
/// Ranked-assignment update against exhaustive enumeration on small instances.
[[nodiscard]] CriterionResult check_filter_oracle(std::uint64_t seed = 4, int instances = 60);
/// Empirical detection rate, clutter count and measurement covariance.
[[nodiscard]] CriterionResult check_sensor_statistics(std::uint64_t seed = 5);
/// Work counters of a two-sensor, 13-action, 40-sample decision.
[[nodiscard]] CriterionResult check_control_accounting(std::uint64_t seed = 6);
/// OSPA against brute force, metric axioms and boundary cases.
[[nodiscard]] CriterionResult check_ospa(std::uint64_t seed = 9);

/// Monte Carlo comparison of the three strategies on a scenario: JDM and IDM
/// each beat random (one-sided paired t-test at 5%) and JDM stays within 10%
/// of IDM.
[[nodiscard]] CriterionResult check_strategy_ordering(const ScenarioConfig& cfg, int runs, std::uint64_t seed,
                                                      int threads);

/// Criteria that finish in seconds: everything except the strategy ordering.
[[nodiscard]] std::vector<CriterionResult> run_fast_suite();

}  // namespace lrfs::validation
