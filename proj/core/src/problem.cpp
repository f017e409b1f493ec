#include "almfast/problem.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "almfast/power_iteration.hpp"

namespace almfast {

QuadraticObjective::QuadraticObjective(Matrix Q_in, Vector c_in)
    : Q(std::move(Q_in)), c(std::move(c_in)) {
  if (Q.rows() != Q.cols())
    throw std::invalid_argument("QuadraticObjective: Q must be square");
  if (Q.rows() != c.size())
    throw std::invalid_argument("QuadraticObjective: Q and c dimensions disagree");
  const double scale = Q.cwiseAbs().maxCoeff();
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("QuadraticObjective: Q must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Q, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10 * std::max(scale, 1.0))
    throw std::invalid_argument("QuadraticObjective: Q must be positive semidefinite");
}

double QuadraticObjective::value(const Vector& u) const {
  return 0.5 * u.dot(Q * u) + c.dot(u);
}

Vector QuadraticObjective::gradient(const Vector& u) const {
  return Q * u + c;
}

ProblemInstance::ProblemInstance(QuadraticObjective objective, Matrix G,
                                 Vector g, SimpleSet set)
    : quadratic_(std::move(objective)),
      G_(std::move(G)),
      g_(std::move(g)),
      set_(std::move(set)) {
  validate_and_cache();
}

ProblemInstance::ProblemInstance(OracleObjective objective, Matrix G, Vector g,
                                 SimpleSet set)
    : oracle_(std::move(objective)),
      G_(std::move(G)),
      g_(std::move(g)),
      set_(std::move(set)) {
  if (!oracle_.value || !oracle_.gradient)
    throw std::invalid_argument("ProblemInstance: oracle objective must supply value and gradient");
  if (!(oracle_.lipschitz >= 0.0))
    throw std::invalid_argument("ProblemInstance: oracle objective must declare L_f >= 0");
  validate_and_cache();
}

void ProblemInstance::validate_and_cache() {
  n_ = G_.cols();
  m_ = G_.rows();
  if (n_ == 0 || m_ == 0)
    throw std::invalid_argument("ProblemInstance: G must be nonempty");
  if (g_.size() != m_)
    throw std::invalid_argument("ProblemInstance: g length must match the rows of G");
  if (set_.dim() != n_)
    throw std::invalid_argument("ProblemInstance: set dimension must match the columns of G");
  if (quadratic_) {
    if (quadratic_->Q.rows() != n_)
      throw std::invalid_argument("ProblemInstance: objective dimension must match G");
    lipschitz_f_ = largest_eigenvalue(quadratic_->Q, 1e-8).value;
  } else {
    lipschitz_f_ = oracle_.lipschitz;
  }
  norm_G_ = spectral_norm(G_, 1e-12);
}

const QuadraticObjective& ProblemInstance::quadratic() const {
  if (!quadratic_)
    throw std::logic_error("ProblemInstance: objective is not quadratic");
  return *quadratic_;
}

double ProblemInstance::objective(const Vector& u) const {
  if (u.size() != n_)
    throw std::invalid_argument("objective: dimension mismatch");
  return quadratic_ ? quadratic_->value(u) : oracle_.value(u);
}

Vector ProblemInstance::gradient(const Vector& u) const {
  if (u.size() != n_)
    throw std::invalid_argument("gradient: dimension mismatch");
  return quadratic_ ? quadratic_->gradient(u) : oracle_.gradient(u);
}

Vector ProblemInstance::residual(const Vector& u) const {
  if (u.size() != n_)
    throw std::invalid_argument("residual: dimension mismatch");
  return G_ * u + g_;
}

ProblemInstance make_toy_instance() {
  Matrix Q = Matrix::Identity(2, 2);
  Vector c = Vector::Zero(2);
  Matrix G(1, 2);
  G << 1.0, 1.0;
  Vector g(1);
  g << -1.0;
  SimpleSet box = SimpleSet::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0));
  return ProblemInstance(QuadraticObjective(std::move(Q), std::move(c)),
                         std::move(G), std::move(g), std::move(box));
}

}  // namespace almfast
