#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "almfast/simple_set.hpp"
#include "almfast/types.hpp"

namespace almfast {

/// Quadratic objective f(u) = 0.5 <u, Q u> + <c, u>. Q must be symmetric
/// (relative tolerance 1e-12) and positive semidefinite up to
/// -1e-10 * ||Q||.
struct QuadraticObjective {
  Matrix Q;
  Vector c;

  QuadraticObjective(Matrix Q_in, Vector c_in);

  double value(const Vector& u) const;
  Vector gradient(const Vector& u) const;
};

/// Black-box smooth objective with a declared gradient Lipschitz constant.
struct OracleObjective {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double lipschitz = 0.0;
};

/// A linearly constrained problem over a simple set:
/// minimize f(u) over u in U subject to G u + g = 0.
///
/// Instances are immutable after construction; the gradient Lipschitz
/// constant of f and the spectral norm of G are estimated once by power
/// iteration and cached for the step-size and budget formulas.
class ProblemInstance {
 public:
  ProblemInstance(QuadraticObjective objective, Matrix G, Vector g,
                  SimpleSet set);
  ProblemInstance(OracleObjective objective, Matrix G, Vector g,
                  SimpleSet set);

  Index dim() const { return n_; }
  Index num_constraints() const { return m_; }
  const Matrix& constraint_matrix() const { return G_; }
  const Vector& constraint_offset() const { return g_; }
  const SimpleSet& set() const { return set_; }

  bool is_quadratic() const { return quadratic_.has_value(); }
  const QuadraticObjective& quadratic() const;

  /// f(u); exact arithmetic for quadratics, oracle value otherwise.
  double objective(const Vector& u) const;

  /// grad f(u); Q u + c for quadratics.
  Vector gradient(const Vector& u) const;

  /// Constraint residual G u + g.
  Vector residual(const Vector& u) const;

  /// Upper bound on the gradient Lipschitz constant of f: lambda_max(Q)
  /// by power iteration for quadratics, the declared constant otherwise.
  double lipschitz_f() const { return lipschitz_f_; }

  /// Cached spectral norm of G.
  double norm_G() const { return norm_G_; }

  /// Cached set diameter.
  double diameter() const { return set_.diameter(); }

 private:
  void validate_and_cache();

  Index n_ = 0;
  Index m_ = 0;
  std::optional<QuadraticObjective> quadratic_;
  OracleObjective oracle_;
  Matrix G_;
  Vector g_;
  SimpleSet set_;
  double lipschitz_f_ = 0.0;
  double norm_G_ = 0.0;
};

/// The two-variable toy problem used throughout the test and bench
/// suites: f(u) = 0.5 ||u||^2, constraint u1 + u2 = 1, box [-1,1]^2.
/// Optimum u* = (0.5, 0.5), multiplier x* = -0.5, f* = 0.25.
ProblemInstance make_toy_instance();

}  // namespace almfast
