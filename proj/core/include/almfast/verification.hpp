#pragma once

#include <string>
#include <vector>

#include "almfast/aifal.hpp"
#include "almfast/ifal.hpp"
#include "almfast/reference.hpp"

namespace almfast {

/// Constants of the projection-budget and outer-complexity estimates,
/// evaluated from (epsilon, rho, D_U, L_f, ||G||, ||x*||).
struct BoundConstants {
  double gamma = 0.0;        ///< outer-count constant of the fixed-penalty budget
  double gamma_tilde = 0.0;  ///< same expression, warm-start outer-complexity form
  long theorem2_budget = 0;  ///< floor(16 gamma D_U sqrt(2(L_f + rho ||G||^2)) / eps^{5/4})
  double theorem3_rho = 0.0; ///< 16 ||x*||^2 / eps, the single-iteration threshold
  long theorem4_budget = 0;  ///< adaptive-variant budget, evaluated with max(||x*||, 2)
};

BoundConstants compute_bound_constants(const ProblemInstance& inst,
                                       const ReferenceSolution& ref,
                                       double rho, double epsilon);

/// Outcome of one executable bound check. Violations are measured without
/// the tolerance; the check passes iff the worst one stays below it.
struct CheckResult {
  std::string name;
  bool passed = false;
  double tolerance = 0.0;
  double worst_violation = 0.0;
  std::vector<double> details;  ///< per-item violation margins
};

/// Two-sided inexact-oracle inequality of the smoothed dual at one pair
/// (x, y): with u~ solved at accuracy delta at y, the affine model
/// L_rho(u~, y) + <G u~ + g, x - y> must under-estimate d_rho(x) by at
/// most (1/rho)||x-y||^2 + 2 delta and never over-estimate it.
CheckResult check_inexact_oracle(const ProblemInstance& inst, double rho,
                                 double delta, const Vector& x,
                                 const Vector& y, double tol);

/// Per-step contraction of the smoothed duality gap along a trace:
/// gap_{k+1} <= (1 - tau_k) gap_k + 2 delta_k, plus its telescoped form
/// gap_k <= 2 gap_0 / ((k+1)(k+2)) + epsilon/2.
CheckResult check_excessive_gap(const std::vector<double>& trace,
                                double epsilon, double tol);

/// Per-iteration objective-residual and feasibility decay estimates and
/// the multiplier lower bound f(u^k) - f* >= -||x*|| ||G u^k + g||.
CheckResult check_outer_bounds(const ProblemInstance& inst,
                               const SolveReport& report,
                               const ReferenceSolution& ref, double rho,
                               double epsilon, double tol);

enum class BudgetTheorem { fixed_penalty, single_iteration, adaptive };

/// Projection-count budgets: the fixed-penalty total (with one
/// initialization allowance and the outer-count premise), the
/// single-iteration regime, or the adaptive stage/projection bounds
/// (2x engineering slack, recorded in the details when used).
CheckResult check_projection_budget(const SolveReport& report,
                                    const BoundConstants& constants,
                                    const ProblemInstance& inst,
                                    BudgetTheorem which);
CheckResult check_projection_budget(const AdaptiveReport& report,
                                    const BoundConstants& constants,
                                    const ProblemInstance& inst,
                                    const ReferenceSolution& ref);

/// Direct check of epsilon-optimality of a final iterate against the
/// reference optimum.
CheckResult check_optimality(const ProblemInstance& inst, const Vector& u,
                             double epsilon, const ReferenceSolution& ref);

/// JSON document for a batch of check results (consumed by the CLI).
std::string checks_to_json(const std::vector<CheckResult>& checks);

}  // namespace almfast
