#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "accel/dynamics.hpp"
#include "accel/problem.hpp"

namespace accel {

/// Interval bounds on the rise time t_max = argmax_t |Phi(t)| and on the peak
/// |Phi(t_max)|.
struct PeakBounds {
  double t_max_lo = 0.0;
  double t_max_hi = 0.0;
  double peak_lo = 0.0;
  double peak_hi = 0.0;
  /// True when the interval is expressed through the condition number
  /// rather than through the rate.
  bool from_kappa = false;

  bool contains_time(double t) const { return t >= t_max_lo && t <= t_max_hi; }
  bool contains_peak(double p) const { return p >= peak_lo && p <= peak_hi; }
};

struct TransientReport {
  AlgoParams params;
  /// Spectral radius of the realization (equals params.rho for table rows
  /// except the general-convex Nesterov row, whose tabulated rate is looser).
  double modal_rho = 0.0;
  std::vector<std::size_t> t;
  std::vector<double> phi_norm;  // |Phi(t)| = max_i |[1 0] M_i^t|
  /// sqrt((t-1)^2 rho^{2t} + t^2 rho^{2t-2}) with rho = modal_rho.
  std::vector<double> envelope;
  /// max_i |[1 0] M_i^t [1 1]^T|: worst gain under x^1 = x^0.
  std::vector<double> balanced_max;
  std::size_t t_max = 0;
  double peak = 0.0;
  std::size_t worst_block_index = 0;
  std::optional<PeakBounds> bounds;
};

/// Horizon that places the peak well inside the grid: six times the upper
/// bound 1 - 1/log(rho) on the rise time, so |Phi(T)| < peak / 10.
std::size_t default_horizon(double rho);

/// sqrt((t-1)^2 rho^{2t} + t^2 rho^{2t-2}); the exact gain of a Jordan mode.
double jordan_envelope(double rho, std::size_t t);

/// Worst-case gain curve |Phi(t)| for t = 0..T (T >= 1).
TransientReport phi_curve(const AlgoParams& params, const Spectrum& spectrum, std::size_t T);

/// Rise time and peak bounds in terms of the rate; needs 1/e <= rho < 1
/// (kOutOfValidityRange otherwise).
PeakBounds rate_peak_bounds(double rho);

/// The same bounds written in terms of kappa for the quadratic-optimal rows.
/// Heavy-ball: t_max in [(sqrt k - 1)/2, (sqrt k + 3)/2]; Nesterov uses
/// k' = sqrt(3k + 1). Throws kOutOfValidityRange when the row's rate is below
/// 1/e and kUnsupportedCombination for gradient descent.
PeakBounds kappa_peak_bounds(double kappa, Algorithm algo);

struct WorstInitialState {
  std::size_t block_index = 0;
  /// Unit initial pair (x^0_i, x^1_i) in the worst mode; other modes are zero.
  std::array<double, 2> direction{0.0, 0.0};
  /// Gain |[1 0] M^tau direction| = |Phi(tau)|.
  double gain = 0.0;
  /// False when the closed form for the repeated mode was used.
  bool numeric = false;
};

/// Unit initial condition that maximizes |x^tau - x*|.
WorstInitialState worst_initial_state(const AlgoParams& params, const Spectrum& spectrum,
                                      std::size_t tau);

/// omega_t(z1, z2) = sum_{i<t} z1^i z2^{t-1-i} - sum_{1<=i<t} z1^i z2^{t-i}, the first-row
/// sum of M^t for a block with eigenvalues z1, z2. Literal summation for
/// t <= 64, closed ratio form (or its confluent limit) beyond.
std::complex<double> omega(std::size_t t, std::complex<double> z1, std::complex<double> z2);

/// max_i |omega_t(mu1_i, mu2_i)| for t = 0..T.
std::vector<double> balanced_response(const AlgoParams& params, const Spectrum& spectrum,
                                      std::size_t T);

struct LinearGeometricPeak {
  double argmax = 1.0;
  double max = 0.0;
};

/// argmax and max of t rho^t over real t >= 1.
LinearGeometricPeak linear_geometric_peak(double rho);

/// |psi^t| / (rho^t |psi^0|) for the quadratic-optimal Nesterov method started
/// from (1, 1) in its slowest mode, t = 0..T. Strictly increasing and
/// unbounded: no constant c gives |psi^t| <= c rho^t |psi^0|.
std::vector<double> balanced_mode_rate_ratio(double kappa, std::size_t T);

struct WorstGain {
  /// sup over t and (z^0, z^1) of |z^t| / sqrt(|z^0|^2 + |z^1|^2); for
  /// gradient descent the denominator is |z^0|.
  double value = 0.0;
  std::size_t attaining_t = 0;
  std::size_t block_index = 0;
  std::array<double, 2> attaining_direction{1.0, 0.0};
};

/// Worst-case gain J on a quadratic. T = 0 selects default_horizon.
WorstGain worst_gain(const AlgoParams& params, const Spectrum& spectrum, std::size_t T = 0);

}  // namespace accel
