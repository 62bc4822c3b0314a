#pragma once

#include "lrfs/gaussian.hpp"
#include "lrfs/random.hpp"
#include "lrfs/types.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lrfs::oracle {

/// Brute-force reference implementations. Slow by design; meant for tests and
/// the `validate` subcommand.

/// Quadrature nodes with per-node weights (cell volumes).
struct StateGrid {
    std::vector<Vector> points;
    std::vector<double> weights;
};

/// Trapezoid nodes on [lo, hi] in one dimension.
[[nodiscard]] StateGrid uniform_grid_1d(double lo, double hi, std::size_t n);

/// Trapezoid rule for a scalar function.
[[nodiscard]] double trapezoid(const std::function<double(double)>& f, double lo, double hi, std::size_t n);

using SetFunction = std::function<double(std::span<const LabeledState>)>;

/// Set integral sum_n 1/n! sum_{(l_1..l_n) distinct} int f({(x_1,l_1),...,(x_n,l_n)}) dx_1..dx_n
/// by Riemann summation over the grid. Throws BudgetExceeded when the number
/// of evaluations would exceed `budget`.
[[nodiscard]] double set_integral(const SetFunction& f, const StateGrid& grid, std::span<const TrackLabel> labels,
                                  std::size_t max_cardinality, std::size_t budget = 50'000'000);

/// Labeled set density of an M-delta-GLMB: Delta(X) w(L(X)) prod p(x, l).
[[nodiscard]] double mdglmb_set_density(const MDeltaGlmbDensity& d, std::span<const LabeledState> x);

/// Minimum-cost assignment of rows to distinct columns by enumerating permutations.
[[nodiscard]] double brute_force_assignment_cost(const Eigen::MatrixXd& cost);

/// OSPA by enumerating every assignment of the smaller set.
[[nodiscard]] double brute_force_ospa(std::span<const Eigen::Vector2d> x, std::span<const Eigen::Vector2d> y,
                                      double cutoff, double order);

/// Random densities for randomized property checks.
struct RandomDensitySpec {
    int dim = 1;
    std::size_t num_labels = 2;
    std::size_t max_components = 2;
    double mean_range = 3.0;
    double std_min = 0.7;
    double std_max = 1.5;
    /// Probability that a given label set gets an entry.
    double entry_probability = 0.7;
};

[[nodiscard]] GaussianComponent random_component(Rng& rng, const RandomDensitySpec& spec);
[[nodiscard]] LabeledGaussianMixture random_mixture(Rng& rng, TrackLabel label, const RandomDensitySpec& spec);
/// Entries over random subsets of labels (0,0)..(0,num_labels-1), at least one entry.
[[nodiscard]] MDeltaGlmbDensity random_mdglmb(Rng& rng, const RandomDensitySpec& spec);

}  // namespace lrfs::oracle
