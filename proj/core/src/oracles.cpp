#include "lrfs/oracles.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lrfs::oracle {

StateGrid uniform_grid_1d(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo)) throw ConfigError("grid needs at least two nodes on a non-empty interval");
    StateGrid g;
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        Vector p(1);
        p(0) = lo + h * static_cast<double>(i);
        g.points.push_back(p);
        g.weights.push_back(i == 0 || i + 1 == n ? 0.5 * h : h);
    }
    return g;
}

double trapezoid(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
    const double h = (hi - lo) / static_cast<double>(n);
    double s = 0.5 * (f(lo) + f(hi));
    for (std::size_t i = 1; i < n; ++i) s += f(lo + h * static_cast<double>(i));
    return s * h;
}

namespace {

double falling_factorial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r *= static_cast<double>(n - i);
    return r;
}

}  // namespace

double set_integral(const SetFunction& f, const StateGrid& grid, std::span<const TrackLabel> labels,
                    std::size_t max_cardinality, std::size_t budget) {
    const std::size_t g = grid.points.size();
    const std::size_t top = std::min(max_cardinality, labels.size());
    double evaluations = 0.0;
    for (std::size_t n = 0; n <= top; ++n)
        evaluations += falling_factorial(labels.size(), n) * std::pow(static_cast<double>(g), static_cast<double>(n));
    if (evaluations > static_cast<double>(budget)) throw BudgetExceeded("set integral exceeds evaluation budget");

    double total = 0.0;
    std::vector<LabeledState> x;
    double factorial = 1.0;
    for (std::size_t n = 0; n <= top; ++n) {
        if (n > 0) factorial *= static_cast<double>(n);
        double sum_n = 0.0;
        std::vector<std::size_t> lab(n), pt(n);
        std::vector<char> used(labels.size(), 0);
        // Ordered tuples of distinct labels, each paired with every grid tuple.
        auto over_points = [&](auto&& self, std::size_t slot, double vol) -> void {
            if (slot == n) {
                x.resize(n);
                for (std::size_t i = 0; i < n; ++i) x[i] = LabeledState{labels[lab[i]], grid.points[pt[i]]};
                sum_n += vol * f(x);
                return;
            }
            for (std::size_t p = 0; p < g; ++p) {
                pt[slot] = p;
                self(self, slot + 1, vol * grid.weights[p]);
            }
        };
        auto over_labels = [&](auto&& self, std::size_t slot) -> void {
            if (slot == n) {
                over_points(over_points, 0, 1.0);
                return;
            }
            for (std::size_t l = 0; l < labels.size(); ++l) {
                if (used[l]) continue;
                used[l] = 1;
                lab[slot] = l;
                self(self, slot + 1);
                used[l] = 0;
            }
        };
        over_labels(over_labels, 0);
        total += sum_n / factorial;
    }
    return total;
}

double mdglmb_set_density(const MDeltaGlmbDensity& d, std::span<const LabeledState> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a].label < x[b].label; });
    LabelSet labels;
    for (auto i : order) labels.push_back(x[i].label);
    if (!is_label_set(labels)) return 0.0;
    const auto* e = d.find(labels);
    if (!e) return 0.0;
    double v = std::exp(e->log_weight);
    for (std::size_t s = 0; s < order.size(); ++s) v *= e->densities[s].pdf(x[order[s]].state);
    return v;
}

double brute_force_assignment_cost(const Eigen::MatrixXd& cost) {
    const auto rows = static_cast<std::size_t>(cost.rows());
    const auto cols = static_cast<std::size_t>(cost.cols());
    if (rows > cols) throw ConfigError("more rows than columns");
    std::vector<int> perm(cols);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (std::size_t r = 0; r < rows; ++r) c += cost(static_cast<Eigen::Index>(r), perm[r]);
        best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double brute_force_ospa(std::span<const Eigen::Vector2d> x, std::span<const Eigen::Vector2d> y, double cutoff,
                        double order) {
    if (x.size() > y.size()) std::swap(x, y);
    const std::size_t m = x.size();
    const std::size_t n = y.size();
    if (n == 0) return 0.0;
    Eigen::MatrixXd c(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::pow(std::min(cutoff, (x[i] - y[j]).norm()), order);
    const double loc = m == 0 ? 0.0 : brute_force_assignment_cost(c);
    const double card = std::pow(cutoff, order) * static_cast<double>(n - m);
    return std::pow((loc + card) / static_cast<double>(n), 1.0 / order);
}

GaussianComponent random_component(Rng& rng, const RandomDensitySpec& spec) {
    std::uniform_real_distribution<double> um(-spec.mean_range, spec.mean_range);
    std::uniform_real_distribution<double> us(spec.std_min, spec.std_max);
    std::normal_distribution<double> n01;
    GaussianComponent c;
    c.weight = 1.0;
    c.mean = Vector(spec.dim);
    for (int i = 0; i < spec.dim; ++i) c.mean(i) = um(rng);
    Matrix a(spec.dim, spec.dim);
    for (int i = 0; i < spec.dim; ++i)
        for (int j = 0; j < spec.dim; ++j) a(i, j) = n01(rng);
    const Matrix q = Eigen::HouseholderQR<Matrix>(a).householderQ();
    Vector ev(spec.dim);
    for (int i = 0; i < spec.dim; ++i) {
        const double s = us(rng);
        ev(i) = s * s;
    }
    c.covariance = symmetrize(q * ev.asDiagonal() * q.transpose());
    return c;
}

LabeledGaussianMixture random_mixture(Rng& rng, TrackLabel label, const RandomDensitySpec& spec) {
    std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(spec.max_components, 1));
    std::uniform_real_distribution<double> uw(0.1, 1.0);
    LabeledGaussianMixture m{label, {}};
    const auto n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
        auto c = random_component(rng, spec);
        c.weight = uw(rng);
        m.components.push_back(std::move(c));
    }
    normalize_weights(m.components);
    return m;
}

MDeltaGlmbDensity random_mdglmb(Rng& rng, const RandomDensitySpec& spec) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> uw(0.05, 1.0);
    const std::size_t sets = std::size_t{1} << spec.num_labels;
    MDeltaGlmbDensity d;
    while (d.entries.empty()) {
        for (std::size_t mask = 0; mask < sets; ++mask) {
            if (u01(rng) >= spec.entry_probability) continue;
            MDeltaGlmbEntry e;
            e.log_weight = std::log(uw(rng));
            for (std::size_t l = 0; l < spec.num_labels; ++l) {
                if (!(mask & (std::size_t{1} << l))) continue;
                const TrackLabel label{0, static_cast<int>(l)};
                e.label_set.push_back(label);
                e.densities.push_back(random_mixture(rng, label, spec));
            }
            d.entries.push_back(std::move(e));
        }
    }
    d.canonicalize();
    d.normalize();
    return d;
}

}  // namespace lrfs::oracle
