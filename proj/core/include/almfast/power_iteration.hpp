#pragma once

#include "almfast/types.hpp"

namespace almfast {

/// Rayleigh estimate of the largest eigenvalue of a symmetric PSD matrix.
struct EigenEstimate {
  double value = 0.0;
  double residual = 0.0;  // ||S v - value * v|| at the returned vector
  long iterations = 0;
};

/// Power iteration with a deterministic start (all-ones, canonical basis
/// vectors as fallback when the start lies in the null space). Stops when
/// the eigen-residual drops below tol * value or after max_iterations,
/// returning the best Rayleigh estimate seen.
EigenEstimate largest_eigenvalue(const Matrix& symmetric_psd, double tol,
                                 long max_iterations = 10000);

/// Spectral norm ||G|| via power iteration on G^T G. Returns 0 for the
/// zero matrix.
double spectral_norm(const Matrix& G, double tol = 1e-12);

}  // namespace almfast
