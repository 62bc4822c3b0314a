#include "lrfs/cs_divergence.hpp"

#include "lrfs/errors.hpp"
#include "lrfs/gaussian.hpp"

#include <cmath>
#include <limits>

namespace lrfs {

double log_zeta(const MDeltaGlmbDensity& phi, const MDeltaGlmbDensity& psi, HypervolumeUnit k) {
    if (!(k.value > 0.0)) throw InconsistentDensity("hyper-volume unit must be positive");
    const double log_k = std::log(k.value);
    std::vector<double> terms;
    terms.reserve(phi.entries.size());
    for (const auto& a : phi.entries) {
        const auto* b = psi.find(a.label_set);
        if (!b) continue;
        double t = a.log_weight + b->log_weight;
        for (std::size_t s = 0; s < a.label_set.size() && std::isfinite(t); ++s)
            t += log_k + log_mixture_pair_integral(a.densities[s].components, b->densities[s].components);
        if (t != -std::numeric_limits<double>::infinity()) terms.push_back(t);
    }
    return log_sum_exp(terms);
}

double zeta(const MDeltaGlmbDensity& phi, const MDeltaGlmbDensity& psi, HypervolumeUnit k) {
    return std::exp(log_zeta(phi, psi, k));
}

double cs_divergence(const MDeltaGlmbDensity& phi, const MDeltaGlmbDensity& psi, HypervolumeUnit k) {
    const double pp = log_zeta(phi, phi, k);
    const double qq = log_zeta(psi, psi, k);
    if (!std::isfinite(pp) || !std::isfinite(qq)) throw InconsistentDensity("degenerate density in divergence");
    const double pq = log_zeta(phi, psi, k);
    if (pq == -std::numeric_limits<double>::infinity()) return std::numeric_limits<double>::infinity();
    return 0.5 * (pp + qq) - pq;
}

}  // namespace lrfs
