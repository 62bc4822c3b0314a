#pragma once

#include "lrfs/types.hpp"

namespace lrfs {

/// Unit of hyper-volume of the single-target state space. Scales each
/// per-label integral, so it only matters across cardinality mismatches.
struct HypervolumeUnit {
    double value = 1.0;
};

/// log zeta(phi, psi) = log sum_L w_phi(L) w_psi(L) prod_{l in L} K * int p_phi(x,l) p_psi(x,l) dx.
/// Label sets missing from either density contribute nothing; -inf when no
/// label set is shared.
[[nodiscard]] double log_zeta(const MDeltaGlmbDensity& phi, const MDeltaGlmbDensity& psi, HypervolumeUnit k = {});

[[nodiscard]] double zeta(const MDeltaGlmbDensity& phi, const MDeltaGlmbDensity& psi, HypervolumeUnit k = {});

/// Cauchy-Schwarz divergence -ln(zeta(phi,psi) / sqrt(zeta(phi,phi) zeta(psi,psi))).
/// +inf when the densities share no label set; throws InconsistentDensity when
/// either self-term vanishes.
[[nodiscard]] double cs_divergence(const MDeltaGlmbDensity& phi, const MDeltaGlmbDensity& psi,
                                   HypervolumeUnit k = {});

}  // namespace lrfs
