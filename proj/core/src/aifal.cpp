#include "almfast/aifal.hpp"

#include <chrono>
#include <stdexcept>

#include "almfast/logging.hpp"
#include "almfast/smoothing.hpp"

namespace almfast {

double next_rho(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("next_rho: rho must be positive");
  return 2.0 * rho;
}

const char* to_string(AdaptiveStatus status) {
  switch (status) {
    case AdaptiveStatus::converged: return "converged";
    case AdaptiveStatus::max_stages: return "max-stages";
    case AdaptiveStatus::inner_failure: return "inner-failure";
  }
  return "unknown";
}

AdaptiveReport run_aifal(const ProblemInstance& inst, double rho0,
                         double epsilon, BudgetMode mode,
                         bool retain_stage_iterates) {
  if (!(rho0 > 0.0) || !(epsilon > 0.0))
    throw std::invalid_argument("run_aifal: rho0 and epsilon must be positive");
  constexpr int max_stages = 64;
  const auto started = std::chrono::steady_clock::now();

  AdaptiveReport report;
  report.rho0 = rho0;
  report.epsilon = epsilon;
  report.budget_mode = mode;
  report.status = AdaptiveStatus::max_stages;

  const double delta0 = epsilon / 6.0;
  double rho = rho0;
  Vector u_carry;  // warm start for the next stage's initialization
  Vector x_carry;

  for (int stage_index = 0; stage_index < max_stages; ++stage_index) {
    AdaptiveStage stage;
    stage.rho = rho;
    stage.carried_x = x_carry;
    const double mu0 = 4.0 / rho;

    OuterIterate state;
    state.k = 0;
    state.mu = mu0;
    try {
      // Remark-style warm initialization under the stage penalty.
      std::optional<Vector> warm;
      if (u_carry.size() > 0) warm = u_carry;
      InnerResult init = solve_inner(inst, Vector::Zero(inst.num_constraints()),
                                     rho, delta0, mode, warm);
      stage.init.inner_iterations = init.iterations;
      stage.init.inner_projections = init.projections;
      state.u = std::move(init.u_tilde);
      state.x = inst.residual(state.u) / mu0;
      stage.init.feasibility = inst.residual(state.u).norm();
      stage.init.objective = inst.objective(state.u);

      SolverConfig stage_cfg;
      stage_cfg.rho = rho;
      stage_cfg.epsilon = epsilon;
      stage_cfg.budget_mode = mode;
      auto [next, record] = outer_step(inst, state, stage_cfg);
      state = std::move(next);
      stage.record = record;
    } catch (const BudgetExceeded& failure) {
      log_error("aifal: inner solve failed at stage ", stage_index, ": ",
                failure.what());
      report.status = AdaptiveStatus::inner_failure;
      break;
    }

    report.total_projections +=
        stage.init.inner_projections + stage.record.inner_projections;
    stage.record.cumulative_projections = report.total_projections;
    stage.record.stop_feasibility_ok = stage.record.feasibility <= epsilon;
    if (retain_stage_iterates) {
      stage.u = state.u;
      stage.x = state.x;
    }
    report.stages.push_back(std::move(stage));

    u_carry = state.u;
    x_carry = state.x;
    report.u = state.u;
    report.x = state.x;

    if (report.stages.back().record.feasibility <= epsilon) {
      report.status = AdaptiveStatus::converged;
      break;
    }
    rho = next_rho(rho);
  }

  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  log_info("aifal: status=", to_string(report.status),
           " stages=", report.stages.size(),
           " projections=", report.total_projections);
  return report;
}

}  // namespace almfast
