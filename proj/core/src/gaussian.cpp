#include "lrfs/gaussian.hpp"

#include "lrfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace lrfs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_det_from_llt(const Eigen::LLT<Matrix>& llt) {
    const auto& l = llt.matrixLLT();
    double s = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
    return 2.0 * s;
}

}  // namespace

Matrix symmetrize(const Matrix& p) { return 0.5 * (p + p.transpose()); }

Eigen::LLT<Matrix> robust_cholesky(const Matrix& p) {
    if (!p.allFinite()) throw NumericalError("covariance has non-finite entries");
    Eigen::LLT<Matrix> llt(p);
    if (llt.info() == Eigen::Success) return llt;

    Matrix s = symmetrize(p);
    const auto n = static_cast<double>(s.rows());
    double jitter = 1e-9 * std::max(s.trace(), 1e-300) / n;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Matrix j = s;
        j.diagonal().array() += jitter;
        llt.compute(j);
        if (llt.info() == Eigen::Success) return llt;
        jitter *= 10.0;
    }
    throw NumericalError("covariance is not positive definite even after regularization");
}

double log_gaussian(const Vector& x, const Vector& mean, const Matrix& cov) {
    const auto llt = robust_cholesky(cov);
    const Vector d = x - mean;
    const Vector y = llt.matrixL().solve(d);
    const auto n = static_cast<double>(d.size());
    return -0.5 * (n * std::log(2.0 * std::numbers::pi) + log_det_from_llt(llt) + y.squaredNorm());
}

double log_gaussian_pair_integral(const GaussianComponent& a, const GaussianComponent& b) {
    if (a.weight <= 0.0 || b.weight <= 0.0) return kNegInf;
    const Matrix s = a.covariance + b.covariance;
    return std::log(a.weight) + std::log(b.weight) + log_gaussian(a.mean, b.mean, s);
}

double gaussian_pair_integral(const GaussianComponent& a, const GaussianComponent& b) {
    return std::exp(log_gaussian_pair_integral(a, b));
}

double log_mixture_pair_integral(std::span<const GaussianComponent> a, std::span<const GaussianComponent> b) {
    std::vector<double> terms;
    terms.reserve(a.size() * b.size());
    for (const auto& ca : a)
        for (const auto& cb : b) terms.push_back(log_gaussian_pair_integral(ca, cb));
    return log_sum_exp(terms);
}

double log_sum_exp(std::span<const double> v) {
    if (v.empty()) return kNegInf;
    const double mx = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
}

void kalman_predict(GaussianComponent& c, const Matrix& f, const Matrix& q) {
    c.mean = f * c.mean;
    c.covariance = symmetrize(f * c.covariance * f.transpose() + q);
}

void normalize_weights(std::vector<GaussianComponent>& components) {
    double total = 0.0;
    for (const auto& c : components) total += c.weight;
    if (!(total > 0.0) || !std::isfinite(total))
        throw InconsistentDensity("mixture has no positive finite weight");
    for (auto& c : components) c.weight /= total;
}

std::vector<GaussianComponent> reduce_mixture(std::vector<GaussianComponent> components,
                                              const MixtureReductionParams& params) {
    normalize_weights(components);
    std::erase_if(components, [&](const GaussianComponent& c) { return c.weight < params.prune_weight; });
    if (components.empty()) throw InconsistentDensity("mixture pruned to nothing");

    std::stable_sort(components.begin(), components.end(),
                     [](const auto& x, const auto& y) { return x.weight > y.weight; });
    if (components.size() == 1) {
        components.front().weight = 1.0;
        return components;
    }

    const double gate = params.merge_distance * params.merge_distance;
    std::vector<bool> used(components.size(), false);
    std::vector<GaussianComponent> out;
    for (std::size_t lead = 0; lead < components.size(); ++lead) {
        if (used[lead]) continue;
        const auto& head = components[lead];
        const auto llt = robust_cholesky(head.covariance);

        std::vector<std::size_t> group;
        for (std::size_t j = lead; j < components.size(); ++j) {
            if (used[j]) continue;
            const Vector d = components[j].mean - head.mean;
            const Vector y = llt.matrixL().solve(d);
            if (j == lead || y.squaredNorm() < gate) {
                group.push_back(j);
                used[j] = true;
            }
        }

        if (group.size() == 1) {
            out.push_back(head);
            continue;
        }
        GaussianComponent merged;
        merged.weight = 0.0;
        merged.mean = Vector::Zero(head.mean.size());
        for (auto j : group) {
            merged.weight += components[j].weight;
            merged.mean += components[j].weight * components[j].mean;
        }
        merged.mean /= merged.weight;
        merged.covariance = Matrix::Zero(head.covariance.rows(), head.covariance.cols());
        for (auto j : group) {
            const Vector d = components[j].mean - merged.mean;
            merged.covariance += components[j].weight * (components[j].covariance + d * d.transpose());
        }
        merged.covariance = symmetrize(merged.covariance / merged.weight);
        out.push_back(std::move(merged));
    }

    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.weight > y.weight; });
    if (out.size() > params.max_components) out.resize(params.max_components);
    normalize_weights(out);
    return out;
}

}  // namespace lrfs
