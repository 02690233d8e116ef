#pragma once

// Seeded sampling that does not depend on the standard library's
// distribution implementations, so reports are reproducible everywhere.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "sphere7/sphere.hpp"

namespace sphere7 {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * std::numbers::pi * v);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline SpherePoint random_point(SplitMix64& g) {
  Vec8 v{};
  for (double& x : v) x = g.normal();
  return SpherePoint::from_ambient(v);
}

// Rejection-sampled from the half of the sphere with |x|^2 >= 1/2.
inline SpherePoint random_point_near_s(SplitMix64& g) {
  for (;;) {
    const SpherePoint p = random_point(g);
    if (p.x.normsq() >= 0.5) return p;
  }
}

inline TangentVector random_unit_tangent(SplitMix64& g, const SpherePoint& p) {
  Vec8 v{};
  for (double& x : v) x = g.normal();
  const TangentVector t = TangentVector::from_ambient(p, v);
  const Vec8 a = t.ambient();
  return t * (1.0 / std::sqrt(dot8(a, a)));
}

}  // namespace sphere7
