#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "accel/linalg2.hpp"
#include "accel/problem.hpp"

namespace accel {

/// One decoupled mode of the LTI realization on a quadratic.
///
/// Accelerated methods give the companion block M = [[0, 1], [a, b]] acting on
/// (x_i^t, x_i^{t+1}); gradient descent gives the scalar 1 - alpha*lambda_i,
/// stored in `b` with `scalar == true` and a == 0.
struct ModalBlock {
  std::size_t index = 0;
  double lambda = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::complex<double> mu1;
  std::complex<double> mu2;
  double rho = 0.0;
  bool degenerate = false;
  bool scalar = false;

  Mat2 matrix() const { return scalar ? Mat2{b, 0.0, 0.0, 0.0} : Mat2{0.0, 1.0, a, b}; }
};

/// Relative gap below which two block eigenvalues are treated as repeated.
inline constexpr double kDegenerateGap = 1e-8;

/// Companion block for eigenvalue `lambda` of the Hessian.
ModalBlock make_block(Algorithm algo, double alpha, double beta, double lambda,
                      std::size_t index = 0);

/// Block with prescribed companion entries (used for property sweeps).
ModalBlock companion_block(double a, double b, std::size_t index = 0);

std::vector<ModalBlock> build_blocks(const AlgoParams& params, const Spectrum& spectrum);

/// Largest block spectral radius; equals the spectral radius of the full A.
double modal_spectral_radius(const std::vector<ModalBlock>& blocks);

/// Parameters with arbitrary (alpha, beta); rho is the modal spectral radius.
AlgoParams custom_params(Algorithm algo, double alpha, double beta, const Spectrum& spectrum);

/// M^t from the eigenvalues of M: the divided-difference form for distinct
/// eigenvalues, the Jordan form for repeated ones. O(log t) per query.
Mat2 block_power(const ModalBlock& block, std::size_t t);

/// || [1 0] M^t ||, i.e. the gain of the mode from (x^0, x^1) to x^t.
/// For scalar blocks this is |1 - alpha*lambda|^t.
double state_transition_norm(const ModalBlock& block, std::size_t t);

/// x^t of the modal solution: x_i^t = [1 0] M_i^t (x0_i, x1_i) in the
/// spectral basis, shifted by the minimizer.
Eigen::VectorXd modal_response(const std::vector<ModalBlock>& blocks,
                               const Eigen::VectorXd& minimizer, const Eigen::VectorXd& x0,
                               const Eigen::VectorXd& x1, std::size_t t);

struct Trajectory {
  AlgoParams params;
  std::vector<Eigen::VectorXd> iterates;  // empty unless requested
  std::vector<double> errors;             // |x^t - x*|, t = 0..T
};

struct SimulateOptions {
  bool keep_iterates = true;
};

/// Runs T iterations of the recurrence selected by params.algo from (x0, x1).
/// Gradient descent ignores x1. Throws kDivergenceDetected on a non-finite
/// iterate, naming the iteration.
Trajectory simulate(const Objective& f, const AlgoParams& params, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& x1, std::size_t T, SimulateOptions options = {});

}  // namespace accel
