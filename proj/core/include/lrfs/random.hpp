#pragma once

#include "lrfs/gaussian.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>

namespace lrfs {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);

/// Order-sensitive hash of a seed path, e.g. derive_seed({base, run, scan}).
[[nodiscard]] std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// Draw from N(mean, cov).
[[nodiscard]] Vector sample_gaussian(const Vector& mean, const Matrix& cov, Rng& rng);

}  // namespace lrfs
