#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace lrfs {

/// Maximum state dimension. The tracker runs in 4-D; oracles use 1-D.
inline constexpr int kMaxStateDim = 4;

/// Runtime-sized state vector with fixed inline storage (no heap traffic).
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxStateDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxStateDim, kMaxStateDim>;

struct GaussianComponent {
    double weight = 1.0;
    Vector mean;
    Matrix covariance;
};

/// (P + P^T) / 2.
[[nodiscard]] Matrix symmetrize(const Matrix& p);

/// Cholesky factor of a covariance. On failure the matrix is symmetrized and
/// jittered by 1e-9 * trace / n along the diagonal, escalating tenfold a few
/// times before throwing NumericalError. Non-finite input throws at once.
[[nodiscard]] Eigen::LLT<Matrix> robust_cholesky(const Matrix& p);

/// log N(x; mean, cov).
[[nodiscard]] double log_gaussian(const Vector& x, const Vector& mean, const Matrix& cov);

/// log of a_w * b_w * N(a_m; b_m, a_P + b_P), i.e. log of the integral of the
/// product of two weighted Gaussians. Returns -inf when either weight is 0.
[[nodiscard]] double log_gaussian_pair_integral(const GaussianComponent& a, const GaussianComponent& b);

/// w_a w_b N(m_a; m_b, P_a + P_b) = integral of the product of two weighted Gaussians.
[[nodiscard]] double gaussian_pair_integral(const GaussianComponent& a, const GaussianComponent& b);

/// log of the integral of the product of two Gaussian mixtures.
[[nodiscard]] double log_mixture_pair_integral(std::span<const GaussianComponent> a,
                                               std::span<const GaussianComponent> b);

/// Numerically stable log(sum(exp(v))). Returns -inf for an empty range.
[[nodiscard]] double log_sum_exp(std::span<const double> v);

/// Kalman time update of a single component: m <- F m, P <- F P F^T + Q.
void kalman_predict(GaussianComponent& c, const Matrix& f, const Matrix& q);

struct MixtureReductionParams {
    /// Components closer than this Mahalanobis distance to the leading
    /// component are merged into it.
    double merge_distance = 1.0;
    std::size_t max_components = 5;
    /// Relative weight below which components are dropped before merging.
    double prune_weight = 1e-10;
};

/// Normalizes weights to sum to one. Throws InconsistentDensity when the
/// total weight is zero or not finite.
void normalize_weights(std::vector<GaussianComponent>& components);

/// Prune, greedily merge (moment-matched) and cap a mixture; the result is
/// normalized and ordered by descending weight.
[[nodiscard]] std::vector<GaussianComponent> reduce_mixture(std::vector<GaussianComponent> components,
                                                            const MixtureReductionParams& params);

}  // namespace lrfs
