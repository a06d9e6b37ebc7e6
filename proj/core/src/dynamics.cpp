#include "accel/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "accel/error.hpp"
#include "powers.hpp"

namespace accel {
namespace {

using cplx = std::complex<double>;

using detail::ipow;

// Roots of z^2 - b z - a. A discriminant within rounding of zero is snapped to
// zero: tabulated parameters put the extreme modes exactly on a Jordan block,
// and an epsilon-sized discriminant would otherwise split the root by
// sqrt(epsilon) and cost eight digits in the divided-difference form.
void companion_roots(ModalBlock& blk) {
  const double a = blk.a;
  const double b = blk.b;
  double disc = b * b + 4.0 * a;
  const double scale = b * b + 4.0 * std::abs(a);
  if (std::abs(disc) <= 64.0 * std::numeric_limits<double>::epsilon() * scale) disc = 0.0;

  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = 0.5 * (b + std::copysign(sq, b));
    if (q == 0.0) {
      blk.mu1 = blk.mu2 = 0.0;
    } else {
      blk.mu1 = q;
      blk.mu2 = -a / q;
    }
  } else {
    const double im = 0.5 * std::sqrt(-disc);
    blk.mu1 = cplx(0.5 * b, im);
    blk.mu2 = cplx(0.5 * b, -im);
  }
  blk.rho = std::max(std::abs(blk.mu1), std::abs(blk.mu2));
  blk.degenerate =
      std::abs(blk.mu1 - blk.mu2) <= kDegenerateGap * std::max(1.0, std::abs(blk.mu1));
}

double checked_real(cplx z, const char* what) {
  if (std::abs(z.imag()) > 1e-10 * (1.0 + std::abs(z.real()))) {
    std::ostringstream os;
    os << what << " has imaginary residue " << z.imag();
    throw std::logic_error(os.str());
  }
  return z.real();
}

}  // namespace

ModalBlock companion_block(double a, double b, std::size_t index) {
  ModalBlock blk;
  blk.index = index;
  blk.a = a;
  blk.b = b;
  companion_roots(blk);
  return blk;
}

ModalBlock make_block(Algorithm algo, double alpha, double beta, double lambda,
                      std::size_t index) {
  ModalBlock blk;
  blk.index = index;
  blk.lambda = lambda;
  switch (algo) {
    case Algorithm::kGradientDescent:
      blk.scalar = true;
      blk.b = 1.0 - alpha * lambda;
      blk.mu1 = blk.mu2 = blk.b;
      blk.rho = std::abs(blk.b);
      return blk;
    case Algorithm::kHeavyBall:
      blk.a = -beta;
      blk.b = 1.0 + beta - alpha * lambda;
      break;
    case Algorithm::kNesterov: {
      const double s = 1.0 - alpha * lambda;
      blk.a = -beta * s;
      blk.b = (1.0 + beta) * s;
      break;
    }
  }
  companion_roots(blk);
  return blk;
}

std::vector<ModalBlock> build_blocks(const AlgoParams& params, const Spectrum& spectrum) {
  std::vector<ModalBlock> blocks;
  blocks.reserve(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    blocks.push_back(make_block(params.algo, params.alpha, params.beta, spectrum[i], i));
  }
  return blocks;
}

double modal_spectral_radius(const std::vector<ModalBlock>& blocks) {
  double rho = 0.0;
  for (const auto& blk : blocks) rho = std::max(rho, blk.rho);
  return rho;
}

AlgoParams custom_params(Algorithm algo, double alpha, double beta, const Spectrum& spectrum) {
  if (!(alpha > 0.0) || !(beta >= 0.0) || !(beta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "need alpha > 0 and beta in [0, 1)");
  }
  AlgoParams p;
  p.algo = algo;
  p.table = ParamTable::kCustom;
  p.alpha = alpha;
  p.beta = algo == Algorithm::kGradientDescent ? 0.0 : beta;
  p.m = spectrum.m();
  p.L = spectrum.L();
  p.kappa = spectrum.kappa();
  p.rho = modal_spectral_radius(build_blocks(p, spectrum));
  return p;
}

Mat2 block_power(const ModalBlock& blk, std::size_t t) {
  if (t == 0) return Mat2::identity();
  if (blk.scalar) return {ipow(blk.b, t), 0.0, 0.0, 0.0};

  if (blk.degenerate) {
    const double mu = 0.5 * blk.b;
    const double tt = static_cast<double>(t);
    const double mu_tm1 = ipow(mu, t - 1);
    const double mu_t = mu_tm1 * mu;
    return {(1.0 - tt) * mu_t, tt * mu_tm1, -tt * mu_t * mu, (tt + 1.0) * mu_t};
  }

  // M^t = [[a s_{t-1}, s_t], [a s_t, s_{t+1}]] with the divided differences
  // s_k = (mu2^k - mu1^k) / (mu2 - mu1); a s_{t-1} = mu1 mu2 (mu1^{t-1} - mu2^{t-1}) / (mu2 - mu1).
  const cplx mu1 = blk.mu1;
  const cplx mu2 = blk.mu2;
  const cplx gap = mu2 - mu1;
  const cplx p1 = ipow(mu1, t - 1);
  const cplx p2 = ipow(mu2, t - 1);
  const cplx q1 = p1 * mu1;
  const cplx q2 = p2 * mu2;
  const cplx prod = mu1 * mu2;
  const cplx e00 = prod * (p1 - p2) / gap;
  const cplx e01 = (q2 - q1) / gap;
  const cplx e10 = prod * (q1 - q2) / gap;
  const cplx e11 = (q2 * mu2 - q1 * mu1) / gap;
  return {checked_real(e00, "M^t(0,0)"), checked_real(e01, "M^t(0,1)"),
          checked_real(e10, "M^t(1,0)"), checked_real(e11, "M^t(1,1)")};
}

double state_transition_norm(const ModalBlock& blk, std::size_t t) {
  if (blk.scalar) return std::abs(ipow(blk.b, t));
  const Mat2 p = block_power(blk, t);
  return norm2(p.m00, p.m01);
}

Eigen::VectorXd modal_response(const std::vector<ModalBlock>& blocks,
                               const Eigen::VectorXd& minimizer, const Eigen::VectorXd& x0,
                               const Eigen::VectorXd& x1, std::size_t t) {
  const auto n = static_cast<Eigen::Index>(blocks.size());
  if (x0.size() != n || minimizer.size() != n || (x1.size() != n && x1.size() != 0)) {
    throw Error(ErrorCode::kDimensionMismatch, "modal response dimension mismatch");
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& blk = blocks[static_cast<std::size_t>(i)];
    const Mat2 p = block_power(blk, t);
    const double e0 = x0[i] - minimizer[i];
    const double e1 = blk.scalar ? 0.0 : x1[i] - minimizer[i];
    x[i] = minimizer[i] + p.m00 * e0 + p.m01 * e1;
  }
  return x;
}

Trajectory simulate(const Objective& f, const AlgoParams& params, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& x1, std::size_t T, SimulateOptions options) {
  if (T < 1) throw Error(ErrorCode::kInvalidArgument, "simulate needs T >= 1");
  const Eigen::Index n = f.dim();
  const bool accelerated = is_accelerated(params.algo);
  if (x0.size() != n || (accelerated && x1.size() != n)) {
    throw Error(ErrorCode::kDimensionMismatch, "initial points do not match objective dimension");
  }

  Trajectory traj;
  traj.params = params;
  traj.errors.reserve(T + 1);
  if (options.keep_iterates) traj.iterates.reserve(T + 1);

  auto record = [&](const Eigen::VectorXd& x, std::size_t t) {
    if (!x.allFinite()) {
      std::ostringstream os;
      os << "non-finite iterate at t = " << t;
      throw Error(ErrorCode::kDivergenceDetected, os.str());
    }
    traj.errors.push_back((x - f.minimizer).norm());
    if (options.keep_iterates) traj.iterates.push_back(x);
  };

  const double alpha = params.alpha;
  const double beta = params.beta;

  if (!accelerated) {
    Eigen::VectorXd x = x0;
    record(x, 0);
    for (std::size_t t = 1; t <= T; ++t) {
      x -= alpha * f.gradient(x);
      record(x, t);
    }
    return traj;
  }

  Eigen::VectorXd prev = x0;
  Eigen::VectorXd cur = x1;
  record(prev, 0);
  record(cur, 1);
  Eigen::VectorXd next(n);
  for (std::size_t t = 2; t <= T; ++t) {
    const Eigen::VectorXd momentum = beta * (cur - prev);
    if (params.algo == Algorithm::kHeavyBall) {
      next = cur + momentum - alpha * f.gradient(cur);
    } else {
      next = cur + momentum - alpha * f.gradient(cur + momentum);
    }
    record(next, t);
    prev.swap(cur);
    cur.swap(next);
  }
  return traj;
}

}  // namespace accel
