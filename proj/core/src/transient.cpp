#include "accel/transient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "accel/error.hpp"
#include "powers.hpp"

namespace accel {
namespace {

using cplx = std::complex<double>;
using detail::ipow;

constexpr double kInvE = 1.0 / std::numbers::e;

bool uses_table(const AlgoParams& p) { return p.table != ParamTable::kCustom; }

}  // namespace

std::size_t default_horizon(double rho) {
  if (!(rho < 1.0)) throw Error(ErrorCode::kNotStable, "rate must be < 1 to pick a horizon");
  if (rho <= 0.0) return 2;
  const double rise_hi = 1.0 - 1.0 / std::log(rho);
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(6.0 * rise_hi)));
}

double jordan_envelope(double rho, std::size_t t) {
  if (t == 0) return 1.0;
  const double tt = static_cast<double>(t);
  const double r_tm1 = std::pow(rho, tt - 1.0);
  return r_tm1 * std::hypot((tt - 1.0) * rho, tt);
}

TransientReport phi_curve(const AlgoParams& params, const Spectrum& spectrum, std::size_t T) {
  if (T < 1) throw Error(ErrorCode::kInvalidArgument, "phi_curve needs T >= 1");
  const auto blocks = build_blocks(params, spectrum);

  TransientReport rep;
  rep.params = params;
  rep.modal_rho = modal_spectral_radius(blocks);
  rep.t.resize(T + 1);
  rep.phi_norm.resize(T + 1);
  rep.envelope.resize(T + 1);
  rep.balanced_max = balanced_response(params, spectrum, T);

  for (std::size_t t = 0; t <= T; ++t) {
    double best = -1.0;
    std::size_t arg = 0;
    for (const auto& blk : blocks) {
      const double g = state_transition_norm(blk, t);
      if (g > best) {
        best = g;
        arg = blk.index;
      }
    }
    rep.t[t] = t;
    rep.phi_norm[t] = best;
    rep.envelope[t] = jordan_envelope(rep.modal_rho, t);
    if (t == 0 || best > rep.peak) {
      rep.peak = best;
      rep.t_max = t;
      rep.worst_block_index = arg;
    }
  }

  if (is_accelerated(params.algo) && uses_table(params) && rep.modal_rho >= kInvE &&
      rep.modal_rho < 1.0) {
    rep.bounds = rate_peak_bounds(rep.modal_rho);
  }
  return rep;
}

PeakBounds rate_peak_bounds(double rho) {
  if (!(rho >= kInvE) || !(rho < 1.0)) {
    std::ostringstream os;
    os << "peak bounds hold for rho in [1/e, 1); got " << rho;
    throw Error(ErrorCode::kOutOfValidityRange, os.str());
  }
  const double lr = std::log(rho);
  const double e = std::numbers::e;
  PeakBounds b;
  b.t_max_lo = -1.0 / lr;
  b.t_max_hi = 1.0 - 1.0 / lr;
  b.peak_lo = -std::numbers::sqrt2 * rho / (e * lr);
  b.peak_hi = -std::numbers::sqrt2 / (e * rho * lr);
  return b;
}

PeakBounds kappa_peak_bounds(double kappa, Algorithm algo) {
  if (algo == Algorithm::kGradientDescent) {
    throw Error(ErrorCode::kUnsupportedCombination, "gradient descent has no transient peak");
  }
  const AlgoParams p = params_for(algo, 1.0, kappa, ParamTable::kQuadraticOptimal);
  if (!(p.rho >= kInvE)) {
    std::ostringstream os;
    os << "kappa = " << kappa << " gives rate " << p.rho << " < 1/e";
    throw Error(ErrorCode::kOutOfValidityRange, os.str());
  }
  const double c = std::numbers::sqrt2 * std::numbers::e;
  PeakBounds b;
  b.from_kappa = true;
  if (algo == Algorithm::kHeavyBall) {
    const double r = std::sqrt(kappa);
    b.t_max_lo = 0.5 * (r - 1.0);
    b.t_max_hi = 0.5 * (r + 3.0);
    b.peak_lo = (r - 1.0) * (r - 1.0) / (c * (r + 1.0));
    b.peak_hi = (r + 1.0) * (r + 1.0) / (c * (r - 1.0));
  } else {
    const double kp = std::sqrt(3.0 * kappa + 1.0);
    b.t_max_lo = 0.5 * (kp - 2.0);
    b.t_max_hi = 0.5 * (kp + 2.0);
    b.peak_lo = (kp - 2.0) * (kp - 2.0) / (c * kp);
    b.peak_hi = kp * kp / (c * (kp - 2.0));
  }
  return b;
}

WorstInitialState worst_initial_state(const AlgoParams& params, const Spectrum& spectrum,
                                      std::size_t tau) {
  if (tau < 1) throw Error(ErrorCode::kInvalidArgument, "worst initial state needs tau >= 1");
  const auto blocks = build_blocks(params, spectrum);

  WorstInitialState w;
  if (params.algo == Algorithm::kGradientDescent) {
    w.numeric = true;
    for (const auto& blk : blocks) {
      const double g = state_transition_norm(blk, tau);
      if (g > w.gain) {
        w.gain = g;
        w.block_index = blk.index;
      }
    }
    w.direction = {1.0, 0.0};
    return w;
  }

  // Quadratic-optimal rows put a Jordan block on the slowest mode; its row
  // [1 0] M^tau is proportional to ((1 - tau) mu, tau).
  const ModalBlock& slow = blocks.back();
  if (params.table == ParamTable::kQuadraticOptimal && slow.degenerate &&
      slow.rho >= modal_spectral_radius(blocks) * (1.0 - 1e-12)) {
    const double mu = 0.5 * slow.b;
    const double tt = static_cast<double>(tau);
    const double u = (1.0 - tt) * mu;
    const double v = tt;
    const double nrm = norm2(u, v);
    w.block_index = slow.index;
    w.direction = {u / nrm, v / nrm};
    w.gain = jordan_envelope(std::abs(mu), tau);
    w.numeric = false;
    return w;
  }

  // Otherwise the principal right singular vector of each 1x2 row is the row
  // itself, so the worst direction is the normalized row of the worst block.
  w.numeric = true;
  double best = -1.0;
  for (const auto& blk : blocks) {
    const Mat2 p = block_power(blk, tau);
    const double g = norm2(p.m00, p.m01);
    if (g > best) {
      best = g;
      w.block_index = blk.index;
      w.gain = g;
      w.direction = g > 0.0 ? std::array<double, 2>{p.m00 / g, p.m01 / g}
                            : std::array<double, 2>{1.0, 0.0};
    }
  }
  return w;
}

std::complex<double> omega(std::size_t t, cplx z1, cplx z2) {
  if (t < 1) throw Error(ErrorCode::kInvalidArgument, "omega_t needs t >= 1");
  if (t <= 64) {
    std::vector<cplx> p1(t + 1), p2(t + 1);
    p1[0] = p2[0] = 1.0;
    for (std::size_t k = 1; k <= t; ++k) {
      p1[k] = p1[k - 1] * z1;
      p2[k] = p2[k - 1] * z2;
    }
    cplx sum = 0.0;
    for (std::size_t i = 0; i < t; ++i) sum += p1[i] * p2[t - 1 - i];
    for (std::size_t i = 1; i < t; ++i) sum -= p1[i] * p2[t - i];
    return sum;
  }
  const double tt = static_cast<double>(t);
  if (std::abs(z1 - z2) > kDegenerateGap) {
    const cplx a = ipow(z1, t);
    const cplx b = ipow(z2, t);
    return (a * (1.0 - z2) - b * (1.0 - z1)) / (z1 - z2);
  }
  const cplx z = 0.5 * (z1 + z2);
  const cplx zt1 = ipow(z, t - 1);
  return tt * zt1 - (tt - 1.0) * zt1 * z;
}

std::vector<double> balanced_response(const AlgoParams& params, const Spectrum& spectrum,
                                      std::size_t T) {
  if (T < 1) throw Error(ErrorCode::kInvalidArgument, "balanced response needs T >= 1");
  const auto blocks = build_blocks(params, spectrum);
  std::vector<double> out(T + 1, 0.0);
  out[0] = 1.0;
  for (std::size_t t = 1; t <= T; ++t) {
    double best = 0.0;
    for (const auto& blk : blocks) {
      double g;
      if (blk.scalar) {
        g = ipow(std::abs(blk.b), t);
      } else if (blk.degenerate) {
        const cplx mu = 0.5 * blk.b;
        g = std::abs(omega(t, mu, mu));
      } else {
        g = std::abs(omega(t, blk.mu1, blk.mu2));
      }
      best = std::max(best, g);
    }
    out[t] = best;
  }
  return out;
}

LinearGeometricPeak linear_geometric_peak(double rho) {
  if (!(rho > 0.0) || !(rho < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "t rho^t peak needs 0 < rho < 1");
  }
  if (rho <= kInvE) return {1.0, rho};
  const double lr = std::log(rho);
  return {-1.0 / lr, -1.0 / (std::numbers::e * lr)};
}

std::vector<double> balanced_mode_rate_ratio(double kappa, std::size_t T) {
  const AlgoParams p = params_for(Algorithm::kNesterov, 1.0, kappa, ParamTable::kQuadraticOptimal);
  const double rho = p.rho;
  std::vector<double> out(T + 1);
  for (std::size_t t = 0; t <= T; ++t) {
    const double tt = static_cast<double>(t);
    const double first = 1.0 + tt * (1.0 - rho) / rho;
    const double second = 1.0 + tt * (1.0 - rho);
    out[t] = std::hypot(first, second) / std::numbers::sqrt2;
  }
  return out;
}

WorstGain worst_gain(const AlgoParams& params, const Spectrum& spectrum, std::size_t T) {
  WorstGain j;
  if (params.algo == Algorithm::kGradientDescent) {
    // |1 - alpha lambda| <= 1 for stable steps, so the supremum sits at t = 0.
    const auto blocks = build_blocks(params, spectrum);
    const double rho = modal_spectral_radius(blocks);
    j.value = std::max(1.0, rho);
    j.attaining_t = 0;
    j.block_index = 0;
    j.attaining_direction = {1.0, 0.0};
    if (rho > 1.0) j.value = std::numeric_limits<double>::infinity();
    return j;
  }
  const std::size_t horizon =
      T > 0 ? T : default_horizon(modal_spectral_radius(build_blocks(params, spectrum)));
  const TransientReport rep = phi_curve(params, spectrum, horizon);
  j.value = rep.peak;
  j.attaining_t = rep.t_max;
  j.block_index = rep.worst_block_index;
  if (rep.t_max >= 1) {
    const WorstInitialState w = worst_initial_state(params, spectrum, rep.t_max);
    j.attaining_direction = w.direction;
    j.block_index = w.block_index;
  }
  return j;
}

}  // namespace accel
