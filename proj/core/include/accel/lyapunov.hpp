#pragma once

#include "accel/linalg2.hpp"
#include "accel/problem.hpp"

namespace accel {

/// Quadratic Lyapunov certificate for a stable companion block M = [[0, 1], [a, b]]:
/// P = [[1, p], [p, 1]] with p = b / (1 - a) satisfies M P M^T - P <= 0, which
/// bounds |M^t|^2 by the eigenvalue ratio of P for every t.
struct LyapunovCertificate {
  double a = 0.0;
  double b = 0.0;
  Mat2 P;
  /// (1 - a + b) / (1 - a - b), the ratio of P's eigenvalues.
  double gamma = 1.0;
  /// max(gamma, 1/gamma) >= sup_t |M^t|^2; +inf when `unbounded`.
  double bound = 1.0;
  /// Largest eigenvalue of M P M^T - P.
  double residual = 0.0;
  /// Set when the block sits on the stability boundary and gamma degenerates.
  bool unbounded = false;
};

/// Throws kNotStable when the companion block has spectral radius >= 1.
LyapunovCertificate lyapunov_block(double a, double b);

/// Ratio of P's eigenvalues for the mode lambda of algo with (alpha, beta).
double lyapunov_gamma(Algorithm algo, double alpha, double beta, double lambda);

struct StateTransitionBound {
  /// sqrt(max{gamma_1, 1/gamma_1, gamma_n, 1/gamma_n}) at the extreme modes.
  double exact = 0.0;
  /// Large-kappa form: sqrt(kappa) for heavy-ball, sqrt(3 kappa + 1) - 1 for Nesterov.
  double asymptotic = 0.0;
};

/// Certified sup_t |A^t| for the quadratic-optimal parameters.
StateTransitionBound state_transition_bound(Algorithm algo, double kappa);

}  // namespace accel
