#include "almfast/inner_solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "almfast/smoothing.hpp"

namespace almfast {

const char* to_string(BudgetMode mode) {
  return mode == BudgetMode::apriori ? "apriori" : "certified";
}

BudgetMode budget_mode_from_string(const std::string& name) {
  if (name == "apriori") return BudgetMode::apriori;
  if (name == "certified") return BudgetMode::certified;
  throw std::invalid_argument("unknown budget mode: " + name);
}

long inner_budget(double diameter, double lipschitz, double delta) {
  if (!(diameter > 0.0) || !(lipschitz > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("inner_budget: D_U, L and delta must be positive");
  return static_cast<long>(std::ceil(2.0 * diameter * std::sqrt(lipschitz / delta)));
}

BudgetExceeded::BudgetExceeded(Vector best, double gap, long iterations)
    : std::runtime_error("inner solve exhausted its iteration budget (best gap " +
                         std::to_string(gap) + " after " +
                         std::to_string(iterations) + " iterations)"),
      best_(std::move(best)),
      gap_(gap),
      iterations_(iterations) {}

namespace {

double lmo_gap(const SimpleSet& set, const Vector& u, const Vector& grad) {
  return grad.dot(u - set.linear_minimize(grad));
}

}  // namespace

InnerResult solve_inner(const ProblemInstance& inst, const Vector& x,
                        double rho, double delta, BudgetMode mode,
                        const std::optional<Vector>& warm_start,
                        long hard_cap) {
  if (!(rho > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("solve_inner: rho and delta must be positive");
  const SimpleSet& set = inst.set();
  if (warm_start) {
    if (warm_start->size() != inst.dim())
      throw std::invalid_argument("solve_inner: warm start dimension mismatch");
    if (!set.contains(*warm_start, 1e-9))
      throw std::invalid_argument("solve_inner: warm start must lie in the set");
  }

  const double lipschitz = penalized_lipschitz(inst, rho);
  const double step = 1.0 / lipschitz;

  InnerResult result;
  result.budget_mode = mode;
  Vector u = warm_start ? *warm_start : set.project(Vector::Zero(inst.dim()));

  long budget = hard_cap;
  if (mode == BudgetMode::apriori) {
    budget = inner_budget(set.diameter(), lipschitz, delta);
    if (budget > hard_cap) throw BudgetExceeded(std::move(u), std::numeric_limits<double>::infinity(), 0);
  }

  Vector y = u;
  Vector u_prev = u;
  double t = 1.0;
  double best_gap = std::numeric_limits<double>::infinity();
  Vector best_u = u;

  if (mode == BudgetMode::certified) {
    const double gap = lmo_gap(set, u, aug_lagrangian_grad_u(inst, u, x, rho));
    if (gap <= delta) {
      result.u_tilde = std::move(u);
      result.certified_gap = std::max(gap, 0.0);
      return result;
    }
    best_gap = gap;
  }

  for (long j = 0; j < budget; ++j) {
    u_prev.swap(u);
    u = set.project(y - step * aug_lagrangian_grad_u(inst, y, x, rho));
    ++result.iterations;
    ++result.projections;

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = u + ((t - 1.0) / t_next) * (u - u_prev);
    t = t_next;

    if (mode == BudgetMode::certified) {
      const double gap = lmo_gap(set, u, aug_lagrangian_grad_u(inst, u, x, rho));
      if (gap < best_gap) {
        best_gap = gap;
        best_u = u;
      }
      if (gap <= delta) {
        result.u_tilde = std::move(u);
        result.certified_gap = std::max(gap, 0.0);
        return result;
      }
    }
  }

  if (mode == BudgetMode::certified)
    throw BudgetExceeded(std::move(best_u), best_gap, result.iterations);

  result.u_tilde = std::move(u);
  return result;
}

}  // namespace almfast
