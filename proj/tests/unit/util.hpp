#pragma once

#include "lrfs/types.hpp"

#include <cmath>
#include <initializer_list>
#include <utility>

namespace lrfs::test {

inline Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

inline GaussianComponent gauss1(double mean, double var, double w = 1.0) {
    GaussianComponent c;
    c.weight = w;
    c.mean = vec({mean});
    c.covariance = Matrix::Constant(1, 1, var);
    return c;
}

inline GaussianComponent gauss4(const Vector& mean, double pos_var, double vel_var, double w = 1.0) {
    GaussianComponent c;
    c.weight = w;
    c.mean = mean;
    c.covariance = Matrix::Zero(4, 4);
    c.covariance.diagonal() << pos_var, pos_var, vel_var, vel_var;
    return c;
}

inline LabeledGaussianMixture track(TrackLabel l, std::vector<GaussianComponent> comps) {
    return LabeledGaussianMixture{l, std::move(comps)};
}

inline MDeltaGlmbEntry entry(std::vector<LabeledGaussianMixture> densities, double w) {
    MDeltaGlmbEntry e;
    for (const auto& d : densities) e.label_set.push_back(d.label);
    e.densities = std::move(densities);
    e.log_weight = std::log(w);
    return e;
}

inline MDeltaGlmbDensity mdglmb(std::vector<MDeltaGlmbEntry> entries) {
    MDeltaGlmbDensity d;
    d.entries = std::move(entries);
    d.canonicalize();
    d.normalize();
    return d;
}

inline constexpr TrackLabel L1{0, 0};
inline constexpr TrackLabel L2{0, 1};

}  // namespace lrfs::test
