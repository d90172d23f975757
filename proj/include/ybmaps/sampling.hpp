#pragma once

// Seedable random sampling used by the property suites. Every batch derives its
// generator from (seed, stream) so parallel runs stay reproducible.

#include <cstdint>
#include <random>

#include "ybmaps/matrix_core.hpp"

namespace ybmaps {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Real and imaginary parts uniform in [lo, hi].
inline Complex uniform_complex(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return {uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

/// Modulus uniform in [rmin, rmax], argument uniform; bounded away from zero.
inline Complex annulus_complex(Rng& rng, double rmin, double rmax) {
  const double r = uniform(rng, rmin, rmax);
  const double t = uniform(rng, -3.141592653589793, 3.141592653589793);
  return std::polar(r, t);
}

inline CMatrix random_matrix(Rng& rng, Eigen::Index n, double lo = 0.0, double hi = 1.0) {
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = uniform_complex(rng, lo, hi);
  return m;
}

}  // namespace ybmaps
