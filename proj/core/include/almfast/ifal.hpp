#pragma once

#include <optional>
#include <string>
#include <vector>

#include "almfast/inner_solver.hpp"
#include "almfast/problem.hpp"

namespace almfast {

/// Step-size coefficient tau_k = 2/(k+3) of the outer loop.
double tau(long k);

/// Inner accuracy schedule delta_k = epsilon / (2 (k+3)).
double delta(long k, double epsilon);

/// Closed form of the primal smoothing parameter after k outer steps with
/// mu_0 = 4/rho: mu_k = 8 / (rho (k+1)(k+2)). The solver maintains mu by
/// the recurrence mu_{k+1} = (1 - tau_k) mu_k; this form is the
/// cross-check used in tests.
double mu_closed_form(long k, double rho);

/// User-supplied starting pair, mainly for exercising the gap recursion
/// from a large initial gap. u0 must lie in the set.
struct ColdStart {
  Vector u0;
  Vector x0;
};

struct SolverConfig {
  double rho = 1.0;
  double epsilon = 1e-2;
  /// Primal smoothing seed; 0 means the default 4/rho.
  double mu0 = 0.0;
  BudgetMode budget_mode = BudgetMode::certified;
  /// Outer iteration cap; 0 derives it from multiplier_bound when given,
  /// else falls back to 100000.
  long max_outer = 0;
  /// Optional a-priori bound on the optimal multiplier norm, used only to
  /// derive the default outer cap.
  std::optional<double> multiplier_bound;
  /// Keep every outer iterate (u^k, x^k) in the report for verification.
  bool retain_iterates = false;
  std::optional<ColdStart> cold_start;

  double effective_mu0() const { return mu0 > 0.0 ? mu0 : 4.0 / rho; }
  long effective_max_outer() const;
};

/// Outer-loop state after k steps.
struct OuterIterate {
  long k = 0;
  Vector u;
  Vector x;
  Vector x_hat;  ///< last extrapolated multiplier (empty before step 0)
  double mu = 0.0;
};

/// One record per outer step; feasibility and objective refer to the
/// iterate the step produced.
struct IterationRecord {
  long k = 0;
  double tau = 0.0;
  double mu = 0.0;     ///< mu_k at the start of the step
  double delta = 0.0;  ///< inner accuracy delta_k
  long inner_iterations = 0;
  long inner_projections = 0;
  double feasibility = 0.0;  ///< ||G u^{k+1} + g||
  double objective = 0.0;    ///< f(u^{k+1})
  long cumulative_projections = 0;
  bool stop_feasibility_ok = false;
  bool stop_count_ok = false;
};

enum class SolveStatus { converged, max_outer, inner_failure };
const char* to_string(SolveStatus status);

struct InitStats {
  long inner_iterations = 0;   ///< solve at x = 0 (warm initialization)
  long inner_projections = 0;
  long gap_solve_iterations = 0;   ///< extra solve behind delta0_tilde
  long gap_solve_projections = 0;
  double feasibility = 0.0;  ///< ||G u^0 + g||
  double objective = 0.0;    ///< f(u^0)
};

struct SolveReport {
  SolverConfig config;
  std::vector<IterationRecord> records;
  InitStats init;
  double delta0_tilde = 0.0;
  long outer_iterations = 0;
  long total_projections = 0;
  SolveStatus status = SolveStatus::max_outer;
  Vector u;  ///< final primal iterate
  Vector x;  ///< final multiplier
  double wall_clock_seconds = 0.0;
  /// Retained iterates u^0..u^N, x^0..x^N (config.retain_iterates).
  std::vector<Vector> iterates_u;
  std::vector<Vector> iterates_x;
};

/// Warm initialization: solve the subproblem at x = 0 to accuracy
/// delta_0 = epsilon/6, set u^0 to its solution and x^0 = (G u^0 + g)/mu_0.
/// Also returns the computable gap surrogate
///   delta0_tilde = f_{mu_0}(u^0) - L_rho(u~(x^0), x^0) + delta_0,
/// whose extra inner solve at x^0 is warm-started from u^0 and counted in
/// the returned stats.
std::pair<OuterIterate, double> init_warm(const ProblemInstance& inst,
                                          const SolverConfig& cfg,
                                          InitStats* stats = nullptr);

/// One outer step k -> k+1:
///   x_hat = (1-tau_k) x + (tau_k/mu_k)(G u + g)
///   u~    = inner solve at x_hat to accuracy delta_k, warm-started at u
///   u'    = (1-tau_k) u + tau_k u~
///   x'    = x_hat + rho (G u~ + g)
///   mu'   = (1-tau_k) mu_k
std::pair<OuterIterate, IterationRecord> outer_step(const ProblemInstance& inst,
                                                    const OuterIterate& state,
                                                    const SolverConfig& cfg);

/// Implementable stopping rule: the produced iterate is epsilon-feasible
/// and the completed outer count has reached sqrt(2 delta0_tilde / epsilon).
bool stop_check(const IterationRecord& record, long outer_count,
                double delta0_tilde, double epsilon);

/// Full solve: warm (or user-supplied cold) initialization, then outer
/// steps until the stopping rule fires or the outer cap is hit.
/// Projections from the initialization solves are included in the total.
SolveReport run_ifal(const ProblemInstance& inst, const SolverConfig& cfg);

}  // namespace almfast
