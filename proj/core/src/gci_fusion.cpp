#include "lrfs/gci_fusion.hpp"

#include "lrfs/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lrfs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Information-form view of one component.
struct InfoComponent {
    double log_weight = 0.0;
    Matrix info;
    Vector info_mean;
    double log_det_cov = 0.0;
    double quad = 0.0;  // m^T P^-1 m
};

InfoComponent to_info(const GaussianComponent& c) {
    const auto llt = robust_cholesky(c.covariance);
    InfoComponent ic;
    ic.log_weight = c.weight > 0.0 ? std::log(c.weight) : kNegInf;
    ic.info = llt.solve(Matrix::Identity(c.covariance.rows(), c.covariance.cols()));
    ic.info = symmetrize(ic.info);
    ic.info_mean = ic.info * c.mean;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) ic.log_det_cov += 2.0 * std::log(l(i, i));
    ic.quad = c.mean.dot(ic.info_mean);
    return ic;
}

}  // namespace

FusionWeights FusionWeights::uniform(std::size_t n) {
    if (n == 0) throw ConfigError("fusion needs at least one input");
    return FusionWeights{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

void FusionWeights::validate(std::size_t expected_size) const {
    if (omega.size() != expected_size) throw ConfigError("fusion weight count does not match input count");
    double s = 0.0;
    for (double w : omega) {
        if (!(w > 0.0) || w > 1.0) throw ConfigError("fusion weights must lie in (0, 1]");
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-12) throw ConfigError("fusion weights must sum to one");
}

PowerProduct weighted_gm_power_product(std::span<const LabeledGaussianMixture* const> mixtures,
                                       const FusionWeights& weights,
                                       const std::optional<MixtureReductionParams>& reduction) {
    weights.validate(mixtures.size());
    const std::size_t n = mixtures.size();
    if (n == 1) return PowerProduct{*mixtures[0], 0.0};

    std::vector<std::vector<InfoComponent>> info(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (mixtures[i]->components.empty()) throw InconsistentDensity("empty mixture in fusion");
        for (const auto& c : mixtures[i]->components) info[i].push_back(to_info(c));
    }
    const auto dim = mixtures[0]->components.front().mean.size();
    double omega_sum = 0.0;
    for (double w : weights.omega) omega_sum += w;
    const double log_2pi = std::log(2.0 * std::numbers::pi);

    PowerProduct out;
    out.mixture.label = mixtures[0]->label;
    std::vector<double> logs;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        Matrix lambda = Matrix::Zero(dim, dim);
        Vector eta = Vector::Zero(dim);
        double log_w = 0.0;
        double log_c = -0.5 * static_cast<double>(dim) * log_2pi * (omega_sum - 1.0);
        double quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& ic = info[i][idx[i]];
            const double w = weights.omega[i];
            lambda += w * ic.info;
            eta += w * ic.info_mean;
            log_w += w * ic.log_weight;
            log_c -= 0.5 * w * ic.log_det_cov;
            quad += w * ic.quad;
        }
        lambda = symmetrize(lambda);
        const auto llt = robust_cholesky(lambda);
        GaussianComponent g;
        g.mean = llt.solve(eta);
        g.covariance = symmetrize(llt.solve(Matrix::Identity(dim, dim)));
        const auto& l = llt.matrixLLT();
        double log_det_lambda = 0.0;
        for (Eigen::Index i = 0; i < l.rows(); ++i) log_det_lambda += 2.0 * std::log(l(i, i));
        log_c += -0.5 * log_det_lambda - 0.5 * (quad - eta.dot(g.mean));
        logs.push_back(log_w + log_c);
        out.mixture.components.push_back(std::move(g));

        std::size_t k = 0;
        while (k < n && ++idx[k] == info[k].size()) idx[k++] = 0;
        if (k == n) break;
    }

    out.log_integral = log_sum_exp(logs);
    if (!std::isfinite(out.log_integral)) throw NumericalError("power-product integral is not finite");
    for (std::size_t c = 0; c < logs.size(); ++c)
        out.mixture.components[c].weight = std::exp(logs[c] - out.log_integral);
    if (reduction) out.mixture.components = reduce_mixture(std::move(out.mixture.components), *reduction);
    return out;
}

PowerProduct weighted_gm_power_product(std::span<const LabeledGaussianMixture> mixtures, const FusionWeights& weights,
                                       const std::optional<MixtureReductionParams>& reduction) {
    std::vector<const LabeledGaussianMixture*> ptrs;
    for (const auto& m : mixtures) ptrs.push_back(&m);
    return weighted_gm_power_product(ptrs, weights, reduction);
}

MDeltaGlmbDensity fuse_mdglmb(std::span<const MDeltaGlmbDensity* const> inputs, const FusionWeights& weights,
                              const std::optional<MixtureReductionParams>& reduction) {
    weights.validate(inputs.size());
    if (inputs.size() == 1) return *inputs[0];

    MDeltaGlmbDensity out;
    std::vector<const MDeltaGlmbEntry*> matched(inputs.size());
    std::vector<const LabeledGaussianMixture*> tracks(inputs.size());
    for (const auto& head : inputs[0]->entries) {
        if (head.log_weight == kNegInf) continue;
        bool everywhere = true;
        for (std::size_t i = 0; i < inputs.size() && everywhere; ++i) {
            matched[i] = i == 0 ? &head : inputs[i]->find(head.label_set);
            everywhere = matched[i] && matched[i]->log_weight != kNegInf;
        }
        if (!everywhere) continue;

        MDeltaGlmbEntry e{head.label_set, 0.0, {}};
        for (std::size_t i = 0; i < inputs.size(); ++i) e.log_weight += weights.omega[i] * matched[i]->log_weight;
        for (std::size_t s = 0; s < head.label_set.size(); ++s) {
            for (std::size_t i = 0; i < inputs.size(); ++i) tracks[i] = &matched[i]->densities[s];
            auto pp = weighted_gm_power_product(tracks, weights, reduction);
            e.log_weight += pp.log_integral;
            e.densities.push_back(std::move(pp.mixture));
        }
        out.entries.push_back(std::move(e));
    }
    if (out.entries.empty()) throw FusionFailure("inputs share no label set");
    out.normalize();
    return out;
}

MDeltaGlmbDensity fuse_mdglmb(std::span<const MDeltaGlmbDensity> inputs, const FusionWeights& weights,
                              const std::optional<MixtureReductionParams>& reduction) {
    std::vector<const MDeltaGlmbDensity*> ptrs;
    for (const auto& d : inputs) ptrs.push_back(&d);
    return fuse_mdglmb(ptrs, weights, reduction);
}

LmbDensity fuse_lmb(std::span<const LmbDensity> inputs, const FusionWeights& weights,
                    const std::optional<MixtureReductionParams>& reduction) {
    weights.validate(inputs.size());
    if (inputs.size() == 1) return inputs[0];

    LmbDensity out;
    std::vector<const LmbTrack*> matched(inputs.size());
    std::vector<const LabeledGaussianMixture*> mixtures(inputs.size());
    for (const auto& head : inputs[0].tracks) {
        bool everywhere = true;
        for (std::size_t i = 0; i < inputs.size() && everywhere; ++i) {
            matched[i] = i == 0 ? &head : inputs[i].find(head.density.label);
            everywhere = matched[i] != nullptr;
        }
        if (!everywhere) continue;

        double log_exist = 0.0;
        double log_absent = 0.0;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const double r = matched[i]->existence;
            log_exist += weights.omega[i] * (r > 0.0 ? std::log(r) : kNegInf);
            log_absent += weights.omega[i] * (r < 1.0 ? std::log1p(-r) : kNegInf);
            mixtures[i] = &matched[i]->density;
        }
        auto pp = weighted_gm_power_product(mixtures, weights, reduction);
        log_exist += pp.log_integral;
        double r = 0.0;
        if (log_exist != kNegInf) r = log_absent == kNegInf ? 1.0 : 1.0 / (1.0 + std::exp(log_absent - log_exist));
        out.tracks.push_back(LmbTrack{r, std::move(pp.mixture)});
    }
    return out;
}

}  // namespace lrfs
