#include "lrfs/assignment.hpp"
#include "lrfs/cs_divergence.hpp"
#include "lrfs/gci_fusion.hpp"
#include "lrfs/glmb_filter.hpp"
#include "lrfs/oracles.hpp"
#include "lrfs/ospa.hpp"
#include "lrfs/random.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace lrfs;

namespace {

Eigen::MatrixXd random_cost(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    Eigen::MatrixXd c(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) c(i, j) = u(rng);
    return c;
}

MDeltaGlmbDensity random_density(std::uint64_t seed, std::size_t labels) {
    Rng rng(seed);
    oracle::RandomDensitySpec spec;
    spec.dim = 4;
    spec.num_labels = labels;
    spec.max_components = 2;
    spec.mean_range = 500;
    spec.std_min = 10;
    spec.std_max = 50;
    spec.entry_probability = 0.8;
    return oracle::random_mdglmb(rng, spec);
}

GaussianComponent track_component(double x, double y) {
    GaussianComponent c;
    c.mean = Vector(4);
    c.mean << x, y, 0, 0;
    c.covariance = Matrix::Zero(4, 4);
    c.covariance.diagonal() << 400, 400, 25, 25;
    return c;
}

}  // namespace

static void BM_MurtyKBest(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto c = random_cost(n, 2 * n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(murty_k_best(c, 50));
}
BENCHMARK(BM_MurtyKBest)->Arg(4)->Arg(8)->Arg(16);

static void BM_FilterUpdate(benchmark::State& state) {
    const auto tracks = static_cast<int>(state.range(0));
    DeltaGlmbDensity d;
    GlmbHypothesis h;
    for (int t = 0; t < tracks; ++t) {
        d.track_table.push_back(LabeledGaussianMixture{TrackLabel{1, t}, {track_component(-600.0 + 300.0 * t, 200.0)}});
        h.label_set.push_back(TrackLabel{1, t});
        h.tracks.push_back(static_cast<std::size_t>(t));
    }
    d.hypotheses.push_back(h);
    SensorModel s;
    s.position = Eigen::Vector2d(-1200, -1200);
    MeasurementSet z;
    for (int t = 0; t < tracks; ++t) z.push_back(s.ideal_measurement(d.track_table[static_cast<std::size_t>(t)].components[0].mean));
    Rng rng(2);
    std::uniform_real_distribution<double> ub(0.0, 1.5), ur(500.0, 3000.0);
    for (int i = 0; i < 25; ++i) z.push_back(Measurement(ub(rng), ur(rng)));
    const auto motion = MotionModel::constant_velocity(1.0, 5.0, 0.98);
    FilterParams p;
    const auto pred = predict(d, motion, BirthModel{}, p, 2);
    for (auto _ : state) benchmark::DoNotOptimize(update(pred, z, s, p));
}
BENCHMARK(BM_FilterUpdate)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Zeta(benchmark::State& state) {
    const auto a = random_density(3, static_cast<std::size_t>(state.range(0)));
    const auto b = random_density(4, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cs_divergence(a, b, HypervolumeUnit{1e8}));
}
BENCHMARK(BM_Zeta)->Arg(3)->Arg(6);

static void BM_Fusion(benchmark::State& state) {
    const auto a = random_density(5, static_cast<std::size_t>(state.range(0)));
    std::vector<MDeltaGlmbDensity> in{a, a};
    for (auto _ : state) benchmark::DoNotOptimize(fuse_mdglmb(in, FusionWeights::uniform(2)));
}
BENCHMARK(BM_Fusion)->Arg(3)->Arg(6);

static void BM_Ospa(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(6);
    std::uniform_real_distribution<double> u(-1000, 1000);
    std::vector<Eigen::Vector2d> x(n), y(n + 1);
    for (auto& p : x) p = Eigen::Vector2d(u(rng), u(rng));
    for (auto& p : y) p = Eigen::Vector2d(u(rng), u(rng));
    for (auto _ : state) benchmark::DoNotOptimize(ospa(x, y));
}
BENCHMARK(BM_Ospa)->Arg(4)->Arg(8)->Arg(20);
BENCHMARK_MAIN();
