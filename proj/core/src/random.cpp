#include "lrfs/random.hpp"

namespace lrfs {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (auto p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
}

Vector sample_gaussian(const Vector& mean, const Matrix& cov, Rng& rng) {
    std::normal_distribution<double> n01;
    Vector u(mean.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = n01(rng);
    if (cov.isZero(0.0)) return mean;
    const auto llt = robust_cholesky(cov);
    return mean + llt.matrixL() * u;
}

}  // namespace lrfs
