#include "almfast/smoothing.hpp"

#include <stdexcept>

namespace almfast {

namespace {

void check_dual_dim(const ProblemInstance& inst, const Vector& x) {
  if (x.size() != inst.num_constraints())
    throw std::invalid_argument("multiplier dimension mismatch");
}

}  // namespace

double aug_lagrangian(const ProblemInstance& inst, const Vector& u,
                      const Vector& x, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("aug_lagrangian: rho must be positive");
  check_dual_dim(inst, x);
  const Vector r = inst.residual(u);
  return inst.objective(u) + x.dot(r) + 0.5 * rho * r.squaredNorm();
}

Vector aug_lagrangian_grad_u(const ProblemInstance& inst, const Vector& u,
                             const Vector& x, double rho) {
  if (!(rho > 0.0))
    throw std::invalid_argument("aug_lagrangian_grad_u: rho must be positive");
  check_dual_dim(inst, x);
  const Vector r = inst.residual(u);
  return inst.gradient(u) + inst.constraint_matrix().transpose() * (x + rho * r);
}

double smoothed_primal(const ProblemInstance& inst, const Vector& u,
                       double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("smoothed_primal: mu must be positive");
  return inst.objective(u) + inst.residual(u).squaredNorm() / (2.0 * mu);
}

Vector smoothing_multiplier(const ProblemInstance& inst, const Vector& u,
                            double mu) {
  if (!(mu > 0.0))
    throw std::invalid_argument("smoothing_multiplier: mu must be positive");
  return inst.residual(u) / mu;
}

double smoothed_lagrangian(const ProblemInstance& inst, const Vector& u,
                           const Vector& x, double mu, double rho) {
  if (mu < 0.0 || rho < 0.0)
    throw std::invalid_argument("smoothed_lagrangian: mu and rho must be nonnegative");
  check_dual_dim(inst, x);
  const Vector r = inst.residual(u);
  return inst.objective(u) + x.dot(r) + 0.5 * rho * r.squaredNorm() -
         0.5 * mu * x.squaredNorm();
}

double penalized_lipschitz(const ProblemInstance& inst, double sigma) {
  if (sigma < 0.0)
    throw std::invalid_argument("penalized_lipschitz: sigma must be nonnegative");
  return inst.lipschitz_f() + sigma * inst.norm_G() * inst.norm_G();
}

double dual_lipschitz(double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("dual_lipschitz: rho must be positive");
  return 1.0 / rho;
}

}  // namespace almfast
