#pragma once

#include <random>

#include "almfast/generator.hpp"
#include "almfast/problem.hpp"

namespace almfast::testing {

/// Deterministic test-side sampler, independent of the library PRNG.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double normal() { return std::normal_distribution<double>()(engine_); }

  Vector vector(Index n, double lo, double hi) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Vector gaussian(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  /// A point of the set (uniform-ish; any supported distribution works
  /// for the sampled-point laws).
  Vector in_set(const SimpleSet& set) {
    switch (set.kind()) {
      case SimpleSet::Kind::box: {
        Vector v(set.dim());
        for (Index i = 0; i < set.dim(); ++i)
          v[i] = uniform(set.lower()[i], set.upper()[i]);
        return v;
      }
      case SimpleSet::Kind::ball: {
        Vector dir = gaussian(set.dim());
        const double norm = dir.norm();
        if (norm == 0.0) return set.center();
        return set.center() + dir * (set.radius() * uniform(0.0, 1.0) / norm);
      }
      case SimpleSet::Kind::simplex: {
        Vector v(set.dim());
        for (Index i = 0; i < set.dim(); ++i)
          v[i] = -std::log(std::max(uniform(0.0, 1.0), 1e-300));
        return v * (set.scale() / v.sum());
      }
    }
    throw std::logic_error("Sampler::in_set: unknown kind");
  }

 private:
  std::mt19937_64 engine_;
};

/// Central finite difference of a scalar function.
template <class F>
Vector central_difference(const F& f, const Vector& u, double step) {
  Vector grad(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    Vector hi = u, lo = u;
    hi[i] += step;
    lo[i] -= step;
    grad[i] = (f(hi) - f(lo)) / (2.0 * step);
  }
  return grad;
}

/// The seeded random box QPs shared by the unit and acceptance suites.
inline InstanceSpec random_box_spec(std::uint64_t seed, Index n, Index m,
                                    double conditioning = 8.0) {
  InstanceSpec spec;
  spec.family = InstanceFamily::random_qp;
  spec.n = n;
  spec.m = m;
  spec.conditioning = conditioning;
  spec.set_kind = SetKind::box;
  spec.set_scale = 1.0;
  spec.seed = seed;
  return spec;
}

}  // namespace almfast::testing
