#include "almfast/ifal.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "almfast/logging.hpp"
#include "almfast/smoothing.hpp"

namespace almfast {

double tau(long k) {
  if (k < 0) throw std::invalid_argument("tau: k must be nonnegative");
  return 2.0 / static_cast<double>(k + 3);
}

double delta(long k, double epsilon) {
  if (k < 0) throw std::invalid_argument("delta: k must be nonnegative");
  if (!(epsilon > 0.0)) throw std::invalid_argument("delta: epsilon must be positive");
  return epsilon / (2.0 * static_cast<double>(k + 3));
}

double mu_closed_form(long k, double rho) {
  return 8.0 / (rho * static_cast<double>(k + 1) * static_cast<double>(k + 2));
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_outer: return "max-outer";
    case SolveStatus::inner_failure: return "inner-failure";
  }
  return "unknown";
}

long SolverConfig::effective_max_outer() const {
  if (max_outer > 0) return max_outer;
  if (multiplier_bound) {
    const double bound = *multiplier_bound;
    const double gamma = std::max({std::sqrt(epsilon / 3.0),
                                   std::sqrt(32.0 / rho),
                                   std::sqrt(8.0 * bound / rho +
                                             2.0 * std::sqrt(4.0 * epsilon / (3.0 * rho)))});
    return 10 * static_cast<long>(std::ceil(gamma / std::sqrt(epsilon)));
  }
  return 100000;
}

namespace {

void validate(const SolverConfig& cfg) {
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("SolverConfig: rho must be positive");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("SolverConfig: epsilon must be positive");
  if (cfg.mu0 < 0.0) throw std::invalid_argument("SolverConfig: mu0 must be nonnegative");
}

}  // namespace

std::pair<OuterIterate, double> init_warm(const ProblemInstance& inst,
                                          const SolverConfig& cfg,
                                          InitStats* stats) {
  validate(cfg);
  const double mu0 = cfg.effective_mu0();
  const double delta0 = delta(0, cfg.epsilon);

  OuterIterate state;
  state.k = 0;
  state.mu = mu0;

  InitStats local;
  if (cfg.cold_start) {
    if (!inst.set().contains(cfg.cold_start->u0, 1e-9))
      throw std::invalid_argument("init: cold-start u0 must lie in the set");
    state.u = cfg.cold_start->u0;
    state.x = cfg.cold_start->x0;
  } else {
    const Vector zero = Vector::Zero(inst.num_constraints());
    InnerResult init = solve_inner(inst, zero, cfg.rho, delta0, cfg.budget_mode);
    local.inner_iterations = init.iterations;
    local.inner_projections = init.projections;
    state.u = std::move(init.u_tilde);
    state.x = inst.residual(state.u) / mu0;
  }

  // Computable surrogate for the initial smoothed gap (one extra inner
  // solve at x^0, warm-started from u^0).
  InnerResult probe = solve_inner(inst, state.x, cfg.rho, delta0,
                                  cfg.budget_mode, state.u);
  local.gap_solve_iterations = probe.iterations;
  local.gap_solve_projections = probe.projections;
  const double delta0_tilde =
      smoothed_primal(inst, state.u, mu0) -
      aug_lagrangian(inst, probe.u_tilde, state.x, cfg.rho) + delta0;

  local.feasibility = inst.residual(state.u).norm();
  local.objective = inst.objective(state.u);
  if (stats != nullptr) *stats = local;
  return {std::move(state), delta0_tilde};
}

std::pair<OuterIterate, IterationRecord> outer_step(const ProblemInstance& inst,
                                                    const OuterIterate& state,
                                                    const SolverConfig& cfg) {
  validate(cfg);
  const long k = state.k;
  const double tau_k = tau(k);
  const double delta_k = delta(k, cfg.epsilon);

  IterationRecord record;
  record.k = k;
  record.tau = tau_k;
  record.mu = state.mu;
  record.delta = delta_k;

  OuterIterate next;
  next.k = k + 1;
  next.x_hat = (1.0 - tau_k) * state.x + (tau_k / state.mu) * inst.residual(state.u);

  InnerResult inner = solve_inner(inst, next.x_hat, cfg.rho, delta_k,
                                  cfg.budget_mode, state.u);
  record.inner_iterations = inner.iterations;
  record.inner_projections = inner.projections;

  next.u = (1.0 - tau_k) * state.u + tau_k * inner.u_tilde;
  next.x = next.x_hat + cfg.rho * inst.residual(inner.u_tilde);
  next.mu = (1.0 - tau_k) * state.mu;

  record.feasibility = inst.residual(next.u).norm();
  record.objective = inst.objective(next.u);
  return {std::move(next), record};
}

bool stop_check(const IterationRecord& record, long outer_count,
                double delta0_tilde, double epsilon) {
  const double count_threshold =
      std::sqrt(2.0 * std::max(delta0_tilde, 0.0) / epsilon);
  return record.feasibility <= epsilon &&
         static_cast<double>(outer_count) >= count_threshold;
}

SolveReport run_ifal(const ProblemInstance& inst, const SolverConfig& cfg) {
  validate(cfg);
  const auto started = std::chrono::steady_clock::now();

  SolveReport report;
  report.config = cfg;
  report.status = SolveStatus::max_outer;

  OuterIterate state;
  try {
    auto [init_state, delta0_tilde] = init_warm(inst, cfg, &report.init);
    state = std::move(init_state);
    report.delta0_tilde = delta0_tilde;
  } catch (const BudgetExceeded& failure) {
    log_error("initialization inner solve failed: ", failure.what());
    report.status = SolveStatus::inner_failure;
    return report;
  }
  report.total_projections =
      report.init.inner_projections + report.init.gap_solve_projections;

  if (cfg.retain_iterates) {
    report.iterates_u.push_back(state.u);
    report.iterates_x.push_back(state.x);
  }

  const long cap = cfg.effective_max_outer();
  const double count_threshold =
      std::sqrt(2.0 * std::max(report.delta0_tilde, 0.0) / cfg.epsilon);
  for (long step = 0; step < cap; ++step) {
    IterationRecord record;
    try {
      auto [next, rec] = outer_step(inst, state, cfg);
      state = std::move(next);
      record = rec;
    } catch (const BudgetExceeded& failure) {
      log_error("inner solve failed at outer step ", step, ": ", failure.what());
      report.status = SolveStatus::inner_failure;
      break;
    }

    report.total_projections += record.inner_projections;
    record.cumulative_projections = report.total_projections;
    record.stop_feasibility_ok = record.feasibility <= cfg.epsilon;
    record.stop_count_ok = static_cast<double>(state.k) >= count_threshold;
    report.records.push_back(record);
    report.outer_iterations = state.k;

    if (cfg.retain_iterates) {
      report.iterates_u.push_back(state.u);
      report.iterates_x.push_back(state.x);
    }

    if (stop_check(record, state.k, report.delta0_tilde, cfg.epsilon)) {
      report.status = SolveStatus::converged;
      break;
    }
  }

  report.u = state.u;
  report.x = state.x;
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  log_info("ifal: status=", to_string(report.status),
           " outer=", report.outer_iterations,
           " projections=", report.total_projections);
  return report;
}

}  // namespace almfast
