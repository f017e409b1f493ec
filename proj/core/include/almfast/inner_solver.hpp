#pragma once

#include <optional>
#include <stdexcept>

#include "almfast/problem.hpp"

namespace almfast {

/// How the inner solver decides when the subproblem is solved.
enum class BudgetMode {
  apriori,    ///< run the worst-case iteration budget, no certificate
  certified,  ///< stop at the first iterate whose linear-minimization gap
              ///< falls below the target accuracy
};

const char* to_string(BudgetMode mode);
BudgetMode budget_mode_from_string(const std::string& name);

/// Result of one inner subproblem solve.
struct InnerResult {
  Vector u_tilde;                      ///< approximate minimizer, in U
  long iterations = 0;                 ///< projected-gradient steps taken
  long projections = 0;                ///< projections performed by those steps
  std::optional<double> certified_gap; ///< gap certificate at exit (certified mode)
  BudgetMode budget_mode = BudgetMode::apriori;
};

/// Iteration budget for an inner solve.
struct InnerBudget {
  long max_iterations = 1;
  double delta = 0.0;
};

/// Worst-case iteration count ceil(2 D_U sqrt(L / delta)) that drives the
/// accelerated-gradient guarantee below delta from any starting point of
/// the set.
long inner_budget(double diameter, double lipschitz, double delta);

/// Thrown when the certified mode exhausts its iteration cap without a
/// certificate (or an apriori budget exceeds the cap). Carries the best
/// iterate and its gap.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(Vector best, double gap, long iterations);
  const Vector& best_iterate() const { return best_; }
  double best_gap() const { return gap_; }
  long iterations() const { return iterations_; }

 private:
  Vector best_;
  double gap_;
  long iterations_;
};

/// Approximately minimizes the augmented Lagrangian u -> L_rho(u, x) over
/// the instance's set by constant-step accelerated projected gradient
/// (step 1/L, L = penalized_lipschitz(rho), FISTA momentum, no restarts).
///
/// apriori mode runs exactly inner_budget(D_U, L, delta) iterations.
/// certified mode evaluates the linear-minimization gap
///   gap(u) = <grad, u - linear_minimize(U, grad)>
/// every iteration (including the start point) and stops as soon as
/// gap <= delta; since the gap bounds the primal optimality gap over a
/// compact set, the returned point satisfies
///   L_rho(u_tilde, x) - min_v L_rho(v, x) <= delta.
///
/// The start point is warm_start when given (must lie in U), otherwise
/// the projection of the origin. Reported projections count the
/// projected-gradient steps; both modes perform exactly one projection
/// per iteration, matching the budget formula's accounting.
InnerResult solve_inner(const ProblemInstance& inst, const Vector& x,
                        double rho, double delta, BudgetMode mode,
                        const std::optional<Vector>& warm_start = std::nullopt,
                        long hard_cap = 1000000);

}  // namespace almfast
