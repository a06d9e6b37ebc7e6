#include <gtest/gtest.h>

#include <cmath>

#include "accel/dynamics.hpp"
#include "accel/error.hpp"
#include "accel/lyapunov.hpp"
#include "generators.hpp"

namespace accel {
namespace {

TEST(LyapunovBlock, RepeatedHalfRoot) {
  const LyapunovCertificate c = lyapunov_block(-0.25, 1.0);
  EXPECT_NEAR(c.P.m01, 0.8, 1e-15);
  EXPECT_NEAR(c.P.m10, 0.8, 1e-15);
  EXPECT_EQ(c.P.m00, 1.0);
  EXPECT_NEAR(c.gamma, 9.0, 1e-13);
  EXPECT_NEAR(c.bound, 9.0, 1e-13);
  EXPECT_LE(c.residual, 1e-14);
  EXPECT_FALSE(c.unbounded);
}

TEST(LyapunovBlock, NilpotentAndRotationLike) {
  const LyapunovCertificate zero = lyapunov_block(0.0, 0.0);
  EXPECT_EQ(zero.gamma, 1.0);
  EXPECT_EQ(zero.bound, 1.0);

  // Purely imaginary roots +-i sqrt(0.9): P = I.
  const LyapunovCertificate rot = lyapunov_block(-0.9, 0.0);
  EXPECT_EQ(rot.P.m01, 0.0);
  EXPECT_EQ(rot.bound, 1.0);
}

TEST(LyapunovBlock, RejectsUnstable) {
  EXPECT_THROW(lyapunov_block(-1.0, 0.5), Error);
  try {
    lyapunov_block(0.0, 1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotStable);
  }
}

TEST(LyapunovBlock, CertificateProperty) {
  auto rng = testing::make_rng(40);
  for (int i = 0; i < 10000; ++i) {
    const auto [a, b] = testing::stable_companion(rng, 0.99);
    const LyapunovCertificate c = lyapunov_block(a, b);
    ASSERT_FALSE(c.unbounded);
    EXPECT_GT(c.gamma, 0.0);
    // P positive definite and the decrease holds up to rounding.
    EXPECT_LT(std::abs(c.P.m01), 1.0);
    EXPECT_LE(c.residual, 1e-12 * (1.0 + std::abs(a) + std::abs(b)));
    const auto [lo, hi] = symmetric_eigenvalues(c.P);
    EXPECT_NEAR(hi / lo, c.bound, 1e-9 * c.bound);
  }
}

TEST(LyapunovBlock, BoundDominatesPowersProperty) {
  auto rng = testing::make_rng(41);
  for (int i = 0; i < 2000; ++i) {
    const auto [a, b] = testing::stable_companion(rng, 0.98);
    const LyapunovCertificate c = lyapunov_block(a, b);
    const ModalBlock blk = companion_block(a, b);
    Mat2 p = Mat2::identity();
    double sup = 1.0;
    for (int t = 1; t <= 500; ++t) {
      p = p * blk.matrix();
      sup = std::max(sup, spectral_norm(p) * spectral_norm(p));
    }
    EXPECT_LE(sup, c.bound * (1.0 + 1e-9)) << "a=" << a << " b=" << b;
  }
}

TEST(StateTransitionBound, HeavyBallIsRootKappa) {
  EXPECT_NEAR(state_transition_bound(Algorithm::kHeavyBall, 100.0).exact, 10.0, 1e-12);
  EXPECT_NEAR(state_transition_bound(Algorithm::kHeavyBall, 100.0).asymptotic, 10.0, 1e-15);
  EXPECT_NEAR(state_transition_bound(Algorithm::kHeavyBall, 1.0).exact, 1.0, 1e-15);
}

TEST(StateTransitionBound, NesterovAsymptote) {
  const StateTransitionBound b = state_transition_bound(Algorithm::kNesterov, 100.0);
  EXPECT_NEAR(b.asymptotic, std::sqrt(301.0) - 1.0, 1e-14);
  EXPECT_GE(b.exact, 1.0);
  for (double k : {1e4, 1e6}) {
    const StateTransitionBound big = state_transition_bound(Algorithm::kNesterov, k);
    EXPECT_NEAR(big.exact / big.asymptotic, 1.0, 5.0 / std::sqrt(k));
  }
  EXPECT_THROW(state_transition_bound(Algorithm::kGradientDescent, 10.0), Error);
}

TEST(StateTransitionBound, DominatesFullTransitionNorm) {
  for (double k : {4.0, 100.0, 2500.0}) {
    for (Algorithm a : {Algorithm::kHeavyBall, Algorithm::kNesterov}) {
      const double bound = state_transition_bound(a, k).exact;
      const AlgoParams p = params_for(a, 1.0, k, ParamTable::kQuadraticOptimal);
      const auto blocks = build_blocks(p, Spectrum::extremes(1.0, k));
      const auto T = static_cast<std::size_t>(10.0 * std::sqrt(k));
      for (std::size_t t = 0; t <= T; ++t) {
        double worst = 0.0;
        for (const auto& blk : blocks) worst = std::max(worst, spectral_norm(block_power(blk, t)));
        EXPECT_LE(worst, bound * (1.0 + 1e-9)) << to_string(a) << " k=" << k << " t=" << t;
      }
    }
  }
}

TEST(StateTransitionBound, ExtremeModesCarryTheWorstGamma) {
  for (double k : {9.0, 100.0, 1e4}) {
    for (Algorithm a : {Algorithm::kHeavyBall, Algorithm::kNesterov}) {
      const AlgoParams p = params_for(a, 1.0, k, ParamTable::kQuadraticOptimal);
      const double bound = state_transition_bound(a, k).exact;
      for (int i = 0; i <= 2000; ++i) {
        const double lambda = 1.0 + (k - 1.0) * i / 2000.0;
        const double g = lyapunov_gamma(a, p.alpha, p.beta, lambda);
        EXPECT_LE(std::max(g, 1.0 / g), bound * bound * (1.0 + 1e-9)) << "lambda=" << lambda;
      }
    }
  }
}

}  // namespace
}  // namespace accel
