#include "almfast/simple_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace almfast {

SimpleSet SimpleSet::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size() || lower.size() == 0)
    throw std::invalid_argument("box: bounds must be nonempty and equally sized");
  for (Index i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
      throw std::invalid_argument("box: bounds must be finite (unbounded sets are rejected)");
    if (lower[i] > upper[i])
      throw std::invalid_argument("box: lower bound exceeds upper bound");
  }
  SimpleSet s;
  s.kind_ = Kind::box;
  s.dim_ = lower.size();
  s.diameter_ = (upper - lower).norm();
  s.a_ = std::move(lower);
  s.b_ = std::move(upper);
  return s;
}

SimpleSet SimpleSet::ball(Vector center, double radius) {
  if (center.size() == 0)
    throw std::invalid_argument("ball: center must be nonempty");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("ball: radius must be positive and finite");
  SimpleSet s;
  s.kind_ = Kind::ball;
  s.dim_ = center.size();
  s.a_ = std::move(center);
  s.scalar_ = radius;
  s.diameter_ = 2.0 * radius;
  return s;
}

SimpleSet SimpleSet::simplex(Index n, double scale) {
  if (n <= 0) throw std::invalid_argument("simplex: dimension must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("simplex: scale must be positive and finite");
  SimpleSet s;
  s.kind_ = Kind::simplex;
  s.dim_ = n;
  s.scalar_ = scale;
  s.diameter_ = n > 1 ? scale * std::sqrt(2.0) : 0.0;
  return s;
}

Vector SimpleSet::project(const Vector& v) const {
  if (v.size() != dim_)
    throw std::invalid_argument("project: dimension mismatch");
  switch (kind_) {
    case Kind::box:
      return v.cwiseMax(a_).cwiseMin(b_);
    case Kind::ball: {
      const Vector offset = v - a_;
      const double norm = offset.norm();
      // The epsilon band keeps the map exactly idempotent: rescaled
      // points land inside it and pass through unchanged.
      if (norm <= scalar_ * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()))
        return v;
      return a_ + offset * (scalar_ / norm);
    }
    case Kind::simplex: {
      // Sorted-threshold projection onto {z >= 0, sum z = scale}.
      std::vector<double> sorted(v.data(), v.data() + v.size());
      std::sort(sorted.begin(), sorted.end(), std::greater<double>());
      double running = 0.0;
      double theta = 0.0;
      for (std::size_t j = 0; j < sorted.size(); ++j) {
        running += sorted[j];
        const double candidate = (running - scalar_) / static_cast<double>(j + 1);
        if (j + 1 == sorted.size() || sorted[j + 1] <= candidate) {
          theta = candidate;
          break;
        }
      }
      return (v.array() - theta).max(0.0);
    }
  }
  throw std::logic_error("project: unknown set kind");
}

Vector SimpleSet::linear_minimize(const Vector& d) const {
  if (d.size() != dim_)
    throw std::invalid_argument("linear_minimize: dimension mismatch");
  switch (kind_) {
    case Kind::box: {
      Vector z(dim_);
      for (Index i = 0; i < dim_; ++i) z[i] = d[i] < 0.0 ? b_[i] : a_[i];
      return z;
    }
    case Kind::ball: {
      const double norm = d.norm();
      if (norm == 0.0) return a_;
      return a_ - d * (scalar_ / norm);
    }
    case Kind::simplex: {
      Index best = 0;
      for (Index i = 1; i < dim_; ++i)
        if (d[i] < d[best]) best = i;  // ties keep the smallest index
      Vector z = Vector::Zero(dim_);
      z[best] = scalar_;
      return z;
    }
  }
  throw std::logic_error("linear_minimize: unknown set kind");
}

double SimpleSet::membership_violation(const Vector& v) const {
  if (v.size() != dim_)
    throw std::invalid_argument("membership_violation: dimension mismatch");
  switch (kind_) {
    case Kind::box: {
      double worst = 0.0;
      for (Index i = 0; i < dim_; ++i)
        worst = std::max({worst, a_[i] - v[i], v[i] - b_[i]});
      return worst;
    }
    case Kind::ball:
      return std::max(0.0, (v - a_).norm() - scalar_);
    case Kind::simplex: {
      double worst = std::abs(v.sum() - scalar_);
      for (Index i = 0; i < dim_; ++i) worst = std::max(worst, -v[i]);
      return worst;
    }
  }
  throw std::logic_error("membership_violation: unknown set kind");
}

}  // namespace almfast
