#pragma once

#include <cstddef>
#include <random>

#include <Eigen/Core>

#include "accel/linalg2.hpp"
#include "accel/problem.hpp"

namespace accel {

// Every block of the Nesterov feedback realization and of the certificate LMI
// is a scalar multiple of the n x n identity, so the matrices below store the
// scalar pattern and the LMI is verified exactly at n = 1.

/// psi^{t+1} = A psi^t + B_u u^t, z^t = C_z psi^t, y^t = C_y psi^t,
/// u^t = grad f(y^t) - m y^t, with psi^t = (x^t, x^{t+1}).
struct FeedbackRealization {
  double m = 1.0;
  double L = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  Eigen::Matrix2d A;
  Eigen::Vector2d B_u;
  Eigen::RowVector2d C_z;
  Eigen::RowVector2d C_y;
};

FeedbackRealization build_realization(double m, double L, double alpha, double beta);

/// Multiplier [[0, L - m], [L - m, -2]] of the sector constraint satisfied by
/// Delta(y) = grad f(y) - m y for every f in F_m^L.
Eigen::Matrix2d sector_multiplier(double m, double L);

/// Quadratic form of the sector constraint for increments (dy, dDelta) of
/// n-vectors; nonnegative for members of F_m^L.
double sector_form(const Eigen::Matrix2d& pi, const Eigen::VectorXd& dy,
                   const Eigen::VectorXd& d_delta);

struct DecreaseMatrix {
  /// f(x^{t+2}) - f(x^{t+1}) <= 1/2 eta^T M eta with eta = (x^t, x^{t+1}, u^t).
  Eigen::Matrix3d M;
  Eigen::Matrix<double, 2, 3> N1;
  Eigen::Matrix<double, 2, 3> N2;
};

DecreaseMatrix decrease_matrix(double m, double L, double alpha, double beta);

/// eta^T (S kron I) eta for eta = (v0, v1, v2) with n-vector components.
double scalar_block_form(const Eigen::Matrix3d& S, const Eigen::VectorXd& v0,
                         const Eigen::VectorXd& v1, const Eigen::VectorXd& v2);

struct LmiAssembly {
  Eigen::Matrix3d matrix;
  /// Largest eigenvalue; <= 0 means the LMI holds.
  double residual = 0.0;
  /// Largest absolute eigenvalue, the scale for relative feasibility tests.
  double norm = 0.0;
};

/// [[A^T X A - X, A^T X B_u], [B_u^T X A, B_u^T X B_u]]
///   + theta1 [C_y 0; 0 1]^T Pi [C_y 0; 0 1] + theta2 M.
LmiAssembly assemble_lmi(const FeedbackRealization& real, const Eigen::Matrix2d& X,
                         double theta1, double theta2);

struct IqcCertificate {
  double kappa = 1.0;
  double m = 1.0;
  double L = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  /// X = [[x1, x0], [x0, x2]].
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  Eigen::Matrix3d lmi = Eigen::Matrix3d::Zero();
  double lmi_residual = 0.0;
  double lmi_norm = 0.0;
  double x_eig_min = 0.0;
  double x_eig_max = 0.0;
  /// Coefficients of |x^0|^2 and |x^1|^2 in the bound on |x^t|^2, and the
  /// common denominator lambda_min(X) + m theta2.
  double coef_x0 = 0.0;
  double coef_x1 = 0.0;
  double bound_den = 0.0;
  /// (|x0| + |x1| + |x2|) / (m theta2); bounds coef_x0, and w + kappa bounds coef_x1.
  double w = 0.0;
  bool feasible = false;

  Eigen::Matrix2d X() const;
};

/// Relative tolerance on the largest LMI eigenvalue.
inline constexpr double kLmiTolerance = 1e-8;

double closed_form_p1(double r);
double closed_form_p2(double r);
/// kappa (2 + p1(sqrt kappa) + kappa p2(sqrt kappa)).
double closed_form_w(double kappa);
/// det(X) / theta2^2 from its closed-form rational expression in sqrt(kappa).
double closed_form_det_x(double kappa, double m);

/// Explicit feasible point of the certificate LMI for Nesterov with
/// general-convex parameters:
///   theta1 = theta2 p2(sqrt k) / m, x0 = -L theta2, x1 = L theta2 p1(sqrt k),
///   x2 = L^2 theta1 + L theta2.
/// kappa = 1 puts a pole in p2 (kDegenerateCertificate).
IqcCertificate closed_form_certificate(double kappa, double m = 1.0, double theta2 = 1.0);

/// Smallest kappa from which w(kappa) <= 4 kappa, i.e. from which the
/// certificate implies |x^t|^2 <= 4 kappa |x^0|^2 + 5 kappa |x^1|^2.
double simplified_bound_threshold();

struct BoundCoefficients {
  double coef_x0 = 0.0;
  double coef_x1 = 0.0;
  /// cond(X) + kappa, multiplying |x^0|^2 + |x^1|^2.
  double combined = 0.0;
};

/// Coefficients lambda_max(X)/(lambda_min(X) + m theta2) and
/// (lambda_max(X) + L theta2)/(lambda_min(X) + m theta2).
BoundCoefficients bound_coefficients(const Eigen::Matrix2d& X, double theta2, double m, double L);

/// Same, for a certificate; throws kInfeasibleCertificate unless it is feasible.
BoundCoefficients transient_bound(const IqcCertificate& cert);

struct WorstGainBounds {
  double lower = 0.0;  // sqrt(2) (sqrt k - 1)^2 / (e sqrt k)
  double upper = 0.0;  // sqrt(5 k)
};

/// Bounds on sup over F_m^L of the worst-case gain J for general-convex Nesterov.
WorstGainBounds worst_gain_bounds(double kappa);

struct GeneralBoundReport {
  std::size_t trials = 0;
  std::size_t steps = 0;
  /// Steps at which the decrease and sector inequalities were evaluated.
  std::size_t checked_steps = 0;
  /// max over trials and t of |x^t|^2 / (4k|x^0|^2 + 5k|x^1|^2).
  double worst_simplified_ratio = 0.0;
  /// max over trials and t of |x^t|^2 / (coef_x0 |x^0|^2 + coef_x1 |x^1|^2).
  double worst_certificate_ratio = 0.0;
  /// Largest violation of f(x^{t+2}) - f(x^{t+1}) <= 1/2 eta^T M eta, relative to the terms.
  double worst_decrease_violation = 0.0;
  /// Most negative sector-form value seen along the trajectories, relative.
  double worst_sector_violation = 0.0;
  bool simplified_holds = true;
  bool certificate_holds = true;
};

struct GeneralBoundOptions {
  std::size_t trials = 20;
  /// Iterations per trial; 0 picks 20 sqrt(kappa) + 50.
  std::size_t steps = 0;
  std::size_t membership_pairs = 200;
  double init_scale = 1.0;
};

/// Runs general-convex Nesterov on f from random (x^0, x^1) and checks the
/// certified bounds at every iterate. The minimizer is moved to the origin.
/// Throws kNotInClass when the sampled membership check fails.
GeneralBoundReport verify_general_bound(const Objective& f, std::mt19937_64& rng,
                                        GeneralBoundOptions options = {});

}  // namespace accel
