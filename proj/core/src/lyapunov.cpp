#include "accel/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "accel/dynamics.hpp"
#include "accel/error.hpp"

namespace accel {

LyapunovCertificate lyapunov_block(double a, double b) {
  const ModalBlock blk = companion_block(a, b);
  if (!(blk.rho < 1.0)) {
    std::ostringstream os;
    os << "companion block (a = " << a << ", b = " << b << ") has spectral radius " << blk.rho;
    throw Error(ErrorCode::kNotStable, os.str());
  }

  LyapunovCertificate c;
  c.a = a;
  c.b = b;
  const double p = b / (1.0 - a);
  c.P = {1.0, p, p, 1.0};

  const Mat2 M{0.0, 1.0, a, b};
  const Mat2 R = M * c.P * M.transposed() - c.P;
  c.residual = symmetric_eigenvalues(R).second;

  // 1 - a +- b = (1 +- mu1)(1 +- mu2) > 0 inside the unit disk; either factor
  // reaching rounding level means the block is on the boundary.
  const double plus = 1.0 - a + b;
  const double minus = 1.0 - a - b;
  const double tiny = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(a) + std::abs(b));
  if (plus <= tiny || minus <= tiny) {
    c.unbounded = true;
    c.gamma = minus <= tiny ? std::numeric_limits<double>::infinity() : 0.0;
    c.bound = std::numeric_limits<double>::infinity();
    return c;
  }
  c.gamma = plus / minus;
  c.bound = std::max(c.gamma, 1.0 / c.gamma);
  return c;
}

double lyapunov_gamma(Algorithm algo, double alpha, double beta, double lambda) {
  const ModalBlock blk = make_block(algo, alpha, beta, lambda);
  if (blk.scalar) return 1.0;
  return (1.0 - blk.a + blk.b) / (1.0 - blk.a - blk.b);
}

StateTransitionBound state_transition_bound(Algorithm algo, double kappa) {
  if (algo == Algorithm::kGradientDescent) {
    throw Error(ErrorCode::kUnsupportedCombination,
                "gradient descent is a contraction; its bound is 1");
  }
  const AlgoParams p = params_for(algo, 1.0, kappa, ParamTable::kQuadraticOptimal);
  StateTransitionBound out;
  double worst = 1.0;
  for (double lambda : {p.L, p.m}) {
    const double g = lyapunov_gamma(algo, p.alpha, p.beta, lambda);
    worst = std::max({worst, g, 1.0 / g});
  }
  out.exact = std::sqrt(worst);
  out.asymptotic = algo == Algorithm::kHeavyBall ? std::sqrt(kappa)
                                                 : std::sqrt(3.0 * kappa + 1.0) - 1.0;
  return out;
}

}  // namespace accel
