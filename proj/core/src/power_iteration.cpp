#include "almfast/power_iteration.hpp"

#include <cmath>
#include <stdexcept>

namespace almfast {

namespace {

// First deterministic start vector whose image under S is nonzero:
// all-ones, then e_0, e_1, ... Returns an empty vector when S = 0.
Vector starting_vector(const Matrix& S) {
  const Index n = S.rows();
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  if ((S * v).norm() > 0.0) return v;
  for (Index i = 0; i < n; ++i) {
    v = Vector::Unit(n, i);
    if ((S * v).norm() > 0.0) return v;
  }
  return Vector();
}

}  // namespace

EigenEstimate largest_eigenvalue(const Matrix& S, double tol,
                                 long max_iterations) {
  if (S.rows() != S.cols())
    throw std::invalid_argument("largest_eigenvalue: matrix must be square");
  if (!(tol > 0.0)) throw std::invalid_argument("largest_eigenvalue: tol must be positive");

  Vector v = starting_vector(S);
  if (v.size() == 0) return {0.0, 0.0, 0};

  EigenEstimate best;
  best.residual = std::numeric_limits<double>::infinity();
  for (long it = 1; it <= max_iterations; ++it) {
    const Vector w = S * v;
    const double norm = w.norm();
    if (norm == 0.0) return {0.0, 0.0, it};
    const double rayleigh = v.dot(w);
    const double residual = (w - rayleigh * v).norm();
    if (residual < best.residual) best = {rayleigh, residual, it};
    if (residual <= tol * std::max(std::abs(rayleigh), 1e-300)) break;
    v = w / norm;
  }
  return best;
}

double spectral_norm(const Matrix& G, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm: tol must be positive");
  if (G.size() == 0) return 0.0;
  const Matrix gram = G.transpose() * G;
  const EigenEstimate top = largest_eigenvalue(gram, tol);
  return std::sqrt(std::max(top.value, 0.0));
}

}  // namespace almfast
