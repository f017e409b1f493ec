#pragma once

#include "almfast/types.hpp"

namespace almfast {

/// Feasible sets with closed-form Euclidean projection and linear
/// minimization: boxes, Euclidean balls, and scaled probability
/// simplices. All variants are bounded; the diameter is computed at
/// construction and cached.
class SimpleSet {
 public:
  enum class Kind { box, ball, simplex };

  /// Box {u : lower <= u <= upper}, componentwise. Bounds must be finite
  /// with lower <= upper.
  static SimpleSet box(Vector lower, Vector upper);

  /// Euclidean ball {u : ||u - center|| <= radius}, radius > 0.
  static SimpleSet ball(Vector center, double radius);

  /// Scaled simplex {u >= 0 : sum(u) = scale} in dimension n, scale > 0.
  static SimpleSet simplex(Index n, double scale);

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  double diameter() const { return diameter_; }

  const Vector& lower() const { return a_; }   // box only
  const Vector& upper() const { return b_; }   // box only
  const Vector& center() const { return a_; }  // ball only
  double radius() const { return scalar_; }    // ball only
  double scale() const { return scalar_; }     // simplex only

  /// Euclidean projection onto the set. Box: componentwise clamp; ball:
  /// radial rescale; simplex: sorted-threshold algorithm.
  Vector project(const Vector& v) const;

  /// A minimizer of <d, z> over the set. Box: vertex picked by the sign
  /// of d (zero components fall to the lower bound, so d = 0 yields the
  /// lower corner); ball: center - radius * d/||d|| (center when d = 0);
  /// simplex: scale * e_i at the first minimal component of d.
  Vector linear_minimize(const Vector& d) const;

  /// Distance-like membership violation: 0 for points of the set, the
  /// worst bound/constraint slack otherwise.
  double membership_violation(const Vector& v) const;

  bool contains(const Vector& v, double tol = 1e-12) const {
    return membership_violation(v) <= tol;
  }

 private:
  SimpleSet() = default;

  Kind kind_ = Kind::box;
  Index dim_ = 0;
  Vector a_;       // box lower / ball center
  Vector b_;       // box upper
  double scalar_ = 0.0;  // ball radius / simplex scale
  double diameter_ = 0.0;
};

}  // namespace almfast
