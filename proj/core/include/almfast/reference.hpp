#pragma once

#include <stdexcept>
#include <vector>

#include "almfast/ifal.hpp"
#include "almfast/problem.hpp"

namespace almfast {

/// Ground truth for a desk-scale instance: primal optimum, an optimal
/// multiplier, the optimal value, and the residual of the KKT system at
/// the returned pair. Produced outside the measured solver path.
struct ReferenceSolution {
  Vector u_star;
  Vector x_star;
  double f_star = 0.0;
  double kkt_residual = 0.0;
};

class InfeasibleInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Certified two-sided bracket on a scalar quantity.
struct DualBracket {
  double lower = 0.0;
  double upper = 0.0;
  double value() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

/// Exact solver for box-constrained QPs with equality constraints, at
/// desk scale (quadratic objective, box set, n <= 30, Q positive
/// definite on the feasible subspace). A multiplier-driven presolve
/// proposes an active set of box faces; candidate active sets are then
/// checked through their equality-constrained KKT systems, falling back
/// to full enumeration for n <= 12.
ReferenceSolution solve_kkt_qp(const ProblemInstance& inst);

/// High-accuracy value of the rho-smoothed dual function
/// d_rho(x) = min_u L_rho(u, x), returned as a certified bracket whose
/// upper end is the value at the computed minimizer and whose lower end
/// subtracts its linear-minimization gap. Quadratic box instances are
/// solved by the exact active-set path; other instances fall back to a
/// certified accelerated-gradient solve with gap target tol.
DualBracket dual_value_bracket(const ProblemInstance& inst, const Vector& x,
                               double rho, double tol);

/// Midpoint of dual_value_bracket.
double dual_value(const ProblemInstance& inst, const Vector& x, double rho,
                  double tol);

/// Smoothed duality gaps f_{mu_k}(u^k) - d_rho(x^k) along a solve trace.
/// Requires the report to carry retained iterates.
std::vector<double> gap_trace(const ProblemInstance& inst,
                              const SolveReport& report, double rho,
                              double tol);

namespace detail {

/// Minimizer of 0.5 u^T H u + b^T u over a box, with a certificate.
struct BoxQpResult {
  Vector u;
  double value = 0.0;  // quadratic part only, no constant term
  double gap = 0.0;    // linear-minimization gap at u
};

/// Primal-dual active set iteration with enumeration and certified
/// accelerated-gradient fallbacks. H must be positive semidefinite;
/// gap_tol bounds the accepted certificate.
BoxQpResult box_qp_min(const Matrix& H, const Vector& b, const SimpleSet& box,
                       double gap_tol);

}  // namespace detail

}  // namespace almfast
