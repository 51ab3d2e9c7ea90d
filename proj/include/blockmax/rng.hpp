#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "blockmax/special.hpp"

namespace blockmax {

// splitmix64 finalizer; good avalanche for seed derivation.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// Counter-based seed derivation: stream (master, a, b) is independent of any
// other (master, a', b'), so seasons and replications can run in parallel
// without sharing generator state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = mix64(master + 0x9E3779B97F4A7C15ULL);
  h = mix64(h ^ (a + 0xBF58476D1CE4E5B9ULL));
  h = mix64(h ^ (b + 0x94D049BB133111EBULL));
  return h;
}

// Seeded generator with the inverse/Box-Muller transforms used throughout.
// Uniform draws are strictly inside (0,1) so quantile transforms never see 0 or 1.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * kPi * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

  double exponential() { return -std::log(uniform()); }

  // standard Cauchy (location 0, scale 1)
  double cauchy() { return std::tan(kPi * (uniform() - 0.5)); }

  // unit Frechet: cdf exp(-1/y), y > 0
  double frechet() { return -1.0 / std::log(uniform()); }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace blockmax
