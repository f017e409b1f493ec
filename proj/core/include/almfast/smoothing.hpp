#pragma once

#include "almfast/problem.hpp"

namespace almfast {

/// Smoothing parameters of the regularized Lagrangian: rho penalizes the
/// constraint residual (dual smoothing), mu regularizes the multiplier
/// (primal smoothing).
struct SmoothingParams {
  double rho = 0.0;
  double mu = 0.0;
};

/// Augmented Lagrangian f(u) + <x, Gu+g> + (rho/2) ||Gu+g||^2.
double aug_lagrangian(const ProblemInstance& inst, const Vector& u,
                      const Vector& x, double rho);

/// Gradient in u of the augmented Lagrangian:
/// grad f(u) + G^T x + rho G^T (Gu+g).
Vector aug_lagrangian_grad_u(const ProblemInstance& inst, const Vector& u,
                             const Vector& x, double rho);

/// Smoothed primal objective f(u) + (1/(2 mu)) ||Gu+g||^2, the value of
/// max_x { f(u) + <x, Gu+g> - (mu/2) ||x||^2 }.
double smoothed_primal(const ProblemInstance& inst, const Vector& u,
                       double mu);

/// The maximizer of the mu-regularized Lagrangian over x: (Gu+g)/mu.
Vector smoothing_multiplier(const ProblemInstance& inst, const Vector& u,
                            double mu);

/// Doubly regularized Lagrangian
/// f(u) + <x, Gu+g> + (rho/2) ||Gu+g||^2 - (mu/2) ||x||^2.
double smoothed_lagrangian(const ProblemInstance& inst, const Vector& u,
                           const Vector& x, double mu, double rho);

/// Gradient Lipschitz constant of the sigma-penalized objective:
/// L_f + sigma ||G||^2. Used with sigma = rho for inner subproblems.
double penalized_lipschitz(const ProblemInstance& inst, double sigma);

/// Gradient Lipschitz constant 1/rho of the rho-smoothed dual function.
double dual_lipschitz(double rho);

}  // namespace almfast
