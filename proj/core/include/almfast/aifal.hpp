#pragma once

#include <vector>

#include "almfast/ifal.hpp"

namespace almfast {

/// Penalty doubling rule between stages.
double next_rho(double rho);

/// One stage: warm initialization under the stage penalty followed by a
/// single outer step at constant inner accuracy epsilon/6.
struct AdaptiveStage {
  double rho = 0.0;
  InitStats init;
  IterationRecord record;
  /// Multiplier carried over from the previous stage, logged for
  /// comparison with the reset value the stage actually starts from.
  Vector carried_x;
  Vector u;  ///< iterate after the stage's outer step
  Vector x;
};

enum class AdaptiveStatus { converged, max_stages, inner_failure };
const char* to_string(AdaptiveStatus status);

struct AdaptiveReport {
  double rho0 = 0.0;
  double epsilon = 0.0;
  BudgetMode budget_mode = BudgetMode::certified;
  std::vector<AdaptiveStage> stages;
  long total_projections = 0;
  AdaptiveStatus status = AdaptiveStatus::max_stages;
  Vector u;
  Vector x;
  double wall_clock_seconds = 0.0;
};

/// Adaptive solve: run single outer iterations of the fixed-penalty
/// method, doubling rho after every stage that misses epsilon-feasibility.
/// Each stage re-establishes the warm initialization under its own rho
/// (inner solve at x = 0, warm-started from the previous stage's primal
/// iterate) so that the initial smoothed gap stays below delta_0. Capped
/// at 64 stages.
AdaptiveReport run_aifal(const ProblemInstance& inst, double rho0,
                         double epsilon,
                         BudgetMode mode = BudgetMode::certified,
                         bool retain_stage_iterates = true);

}  // namespace almfast
