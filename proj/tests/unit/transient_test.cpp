#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "accel/error.hpp"
#include "accel/transient.hpp"
#include "generators.hpp"

namespace accel {
namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no accel::Error thrown";
  return ErrorCode::kInvalidArgument;
}

AlgoParams quad(Algorithm a, double k) { return params_for(a, 1.0, k, ParamTable::kQuadraticOptimal); }

TEST(PhiCurve, HeavyBallKappa9FirstSteps) {
  const TransientReport r = phi_curve(quad(Algorithm::kHeavyBall, 9.0), Spectrum::extremes(1.0, 9.0), 4);
  EXPECT_EQ(r.phi_norm[0], 1.0);
  EXPECT_NEAR(r.phi_norm[1], 1.0, 1e-15);
  EXPECT_NEAR(r.phi_norm[2], std::sqrt(1.0625), 1e-14);
  EXPECT_NEAR(r.modal_rho, 0.5, 1e-12);
}

TEST(PhiCurve, TableRowsSitOnJordanEnvelope) {
  for (double k : {10.0, 100.0, 1e4}) {
    for (Algorithm a : {Algorithm::kHeavyBall, Algorithm::kNesterov}) {
      const TransientReport r = phi_curve(quad(a, k), Spectrum::extremes(1.0, k), 400);
      for (std::size_t t = 0; t <= 400; ++t) {
        EXPECT_NEAR(r.phi_norm[t], r.envelope[t], 1e-9 * std::max(1.0, r.envelope[t]))
            << to_string(a) << " kappa=" << k << " t=" << t;
      }
    }
  }
}

TEST(PhiCurve, EnvelopeDominatesCustomStableParameters) {
  auto rng = testing::make_rng(30);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const double k = testing::log_uniform(rng, 2.0, 1e3);
    const Spectrum s = Spectrum::log_uniform(1.0, k, 6, rng);
    const Algorithm a = i % 2 ? Algorithm::kHeavyBall : Algorithm::kNesterov;
    const double alpha = testing::uniform(rng, 0.05, 1.9) / k;
    const double beta = testing::uniform(rng, 0.0, 0.98);
    const AlgoParams p = custom_params(a, alpha, beta, s);
    if (!(p.rho < 0.999)) continue;
    ++checked;
    const TransientReport r = phi_curve(p, s, 300);
    for (std::size_t t = 0; t <= 300; ++t) {
      EXPECT_LE(r.phi_norm[t], r.envelope[t] * (1.0 + 1e-9) + 1e-300) << "t=" << t;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(PhiCurve, PeakLandsInsideRateBounds) {
  for (double k : {30.0, 1e3, 1e5}) {
    for (Algorithm a : {Algorithm::kHeavyBall, Algorithm::kNesterov}) {
      const AlgoParams p = quad(a, k);
      const TransientReport r = phi_curve(p, Spectrum::extremes(1.0, k), default_horizon(p.rho));
      ASSERT_TRUE(r.bounds.has_value());
      EXPECT_TRUE(r.bounds->contains_time(static_cast<double>(r.t_max)));
      EXPECT_TRUE(r.bounds->contains_peak(r.peak));
    }
  }
}

TEST(PhiCurve, RejectsEmptyHorizon) {
  EXPECT_EQ(code_of([] { phi_curve(quad(Algorithm::kNesterov, 4.0), Spectrum::extremes(1.0, 4.0), 0); }),
            ErrorCode::kInvalidArgument);
}

TEST(RatePeakBounds, Values) {
  const PeakBounds half = rate_peak_bounds(0.5);
  EXPECT_NEAR(half.t_max_lo, 1.4426950408889634, 1e-14);
  EXPECT_NEAR(half.t_max_hi, 2.4426950408889634, 1e-14);
  EXPECT_NEAR(half.peak_lo, 0.3752883295309714, 1e-14);
  EXPECT_NEAR(half.peak_hi, 1.5011533181238856, 1e-14);

  const PeakBounds edge = rate_peak_bounds(1.0 / std::numbers::e);
  EXPECT_NEAR(edge.t_max_lo, 1.0, 1e-14);
  EXPECT_NEAR(edge.t_max_hi, 2.0, 1e-14);
  EXPECT_NEAR(edge.peak_hi, std::numbers::sqrt2, 1e-14);

  const PeakBounds slow = rate_peak_bounds(0.99);
  EXPECT_NEAR(slow.t_max_lo, 99.49916247342207, 1e-10);
  EXPECT_NEAR(slow.peak_lo, 51.24778928588923, 1e-10);
  EXPECT_NEAR(slow.peak_hi, 52.28832699305095, 1e-10);
}

TEST(RatePeakBounds, RejectsFastRates) {
  EXPECT_EQ(code_of([] { rate_peak_bounds(0.3); }), ErrorCode::kOutOfValidityRange);
  EXPECT_EQ(code_of([] { rate_peak_bounds(1.0); }), ErrorCode::kOutOfValidityRange);
}

TEST(KappaPeakBounds, HeavyBallKappa100) {
  const PeakBounds b = kappa_peak_bounds(100.0, Algorithm::kHeavyBall);
  EXPECT_TRUE(b.from_kappa);
  EXPECT_NEAR(b.t_max_lo, 4.5, 1e-14);
  EXPECT_NEAR(b.t_max_hi, 6.5, 1e-14);
  EXPECT_NEAR(b.peak_lo, 81.0 / (11.0 * std::numbers::sqrt2 * std::numbers::e), 1e-13);
  EXPECT_NEAR(b.peak_hi, 121.0 / (9.0 * std::numbers::sqrt2 * std::numbers::e), 1e-13);
  EXPECT_NEAR(b.peak_lo, 1.9157, 5e-4);
  EXPECT_NEAR(b.peak_hi, 3.4971, 5e-4);
}

TEST(KappaPeakBounds, NesterovKappa100) {
  const PeakBounds b = kappa_peak_bounds(100.0, Algorithm::kNesterov);
  const double kp = std::sqrt(301.0);
  EXPECT_NEAR(b.t_max_lo, 0.5 * kp - 1.0, 1e-14);
  EXPECT_NEAR(b.t_max_lo, 7.675, 1e-3);
  EXPECT_NEAR(b.t_max_hi, 9.675, 1e-3);
}

TEST(KappaPeakBounds, HeavyBallKappaMillion) {
  const PeakBounds b = kappa_peak_bounds(1e6, Algorithm::kHeavyBall);
  EXPECT_NEAR(b.peak_lo, 999.0 * 999.0 / (std::numbers::sqrt2 * std::numbers::e * 1001.0), 1e-9);
  EXPECT_NEAR(b.peak_lo, 259.5, 0.2);
  const TransientReport r =
      phi_curve(quad(Algorithm::kHeavyBall, 1e6), Spectrum::extremes(1.0, 1e6), 2000);
  EXPECT_TRUE(b.contains_peak(r.peak));
  EXPECT_TRUE(b.contains_time(static_cast<double>(r.t_max)));
}

TEST(KappaPeakBounds, Errors) {
  EXPECT_EQ(code_of([] { kappa_peak_bounds(100.0, Algorithm::kGradientDescent); }),
            ErrorCode::kUnsupportedCombination);
  EXPECT_EQ(code_of([] { kappa_peak_bounds(2.0, Algorithm::kHeavyBall); }),
            ErrorCode::kOutOfValidityRange);
}

TEST(WorstInitialState, FirstStepPicksVelocity) {
  const WorstInitialState w =
      worst_initial_state(quad(Algorithm::kHeavyBall, 9.0), Spectrum::extremes(1.0, 9.0), 1);
  EXPECT_NEAR(std::abs(w.direction[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w.direction[1]), 1.0, 1e-15);
  EXPECT_NEAR(w.gain, 1.0, 1e-15);
}

TEST(WorstInitialState, HeavyBallKappa9SecondStep) {
  const WorstInitialState w =
      worst_initial_state(quad(Algorithm::kHeavyBall, 9.0), Spectrum::extremes(1.0, 9.0), 2);
  const double n = std::hypot(0.25, 1.0);
  EXPECT_NEAR(std::abs(w.direction[0]), 0.25 / n, 1e-12);
  EXPECT_NEAR(std::abs(w.direction[1]), 1.0 / n, 1e-12);
  EXPECT_LT(w.direction[0] * w.direction[1], 0.0);
  EXPECT_NEAR(w.gain, 1.030776, 1e-6);
}

TEST(WorstInitialState, GainEqualsPeakAndIsAttained) {
  const double k = 1e3;
  const AlgoParams p = quad(Algorithm::kNesterov, k);
  const Spectrum s = Spectrum::extremes(1.0, k);
  const TransientReport r = phi_curve(p, s, default_horizon(p.rho));
  const WorstInitialState w = worst_initial_state(p, s, r.t_max);
  EXPECT_NEAR(w.gain, r.peak, 1e-6 * r.peak);

  // Push the direction through the block by repeated multiplication.
  const ModalBlock blk = build_blocks(p, s)[w.block_index];
  const Mat2 pw = testing::brute_power(blk.matrix(), r.t_max);
  EXPECT_NEAR(std::abs(pw.m00 * w.direction[0] + pw.m01 * w.direction[1]), r.peak, 1e-8 * r.peak);
}

TEST(WorstInitialState, NumericPathMatchesBruteForceProperty) {
  auto rng = testing::make_rng(31);
  for (int i = 0; i < 200; ++i) {
    const Spectrum s = Spectrum::log_uniform(1.0, 50.0, 4, rng);
    const AlgoParams p = custom_params(Algorithm::kHeavyBall, 0.02, testing::uniform(rng, 0.0, 0.9), s);
    const std::size_t tau = 1 + static_cast<std::size_t>(testing::uniform(rng, 0.0, 40.0));
    const WorstInitialState w = worst_initial_state(p, s, tau);
    double best = 0.0;
    for (const auto& blk : build_blocks(p, s)) {
      const Mat2 pw = testing::brute_power(blk.matrix(), tau);
      best = std::max(best, std::hypot(pw.m00, pw.m01));
    }
    EXPECT_NEAR(w.gain, best, 1e-10 * std::max(best, 1e-10));
    EXPECT_NEAR(std::hypot(w.direction[0], w.direction[1]), 1.0, 1e-12);
  }
}

std::complex<double> omega_oracle(std::size_t t, std::complex<long double> z1,
                                  std::complex<long double> z2) {
  std::complex<long double> s = 0.0L;
  for (std::size_t i = 0; i < t; ++i) s += std::pow(z1, static_cast<int>(i)) * std::pow(z2, static_cast<int>(t - 1 - i));
  for (std::size_t i = 1; i < t; ++i) s -= std::pow(z1, static_cast<int>(i)) * std::pow(z2, static_cast<int>(t - i));
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

TEST(Omega, SmallCases) {
  EXPECT_NEAR(std::abs(omega(1, 0.3, -0.7) - 1.0), 0.0, 1e-15);
  const std::complex<double> z = std::polar(0.8, 0.4);
  const std::complex<double> w2 = omega(2, z, std::conj(z));
  EXPECT_NEAR(w2.real(), 2.0 * 0.8 * std::cos(0.4) - 0.64, 1e-14);
  EXPECT_NEAR(w2.imag(), 0.0, 1e-14);
  EXPECT_NEAR(omega(3, 0.5, 0.5).real(), 0.5, 1e-15);
  EXPECT_EQ(code_of([] { omega(0, 0.1, 0.2); }), ErrorCode::kInvalidArgument);
}

TEST(Omega, ClosedFormMatchesSummationBeyondCutover) {
  auto rng = testing::make_rng(32);
  for (int i = 0; i < 200; ++i) {
    const auto [a, b] = testing::stable_companion(rng, 0.98);
    const ModalBlock blk = companion_block(a, b);
    const std::size_t t = 65 + static_cast<std::size_t>(testing::uniform(rng, 0.0, 100.0));
    const std::complex<double> got = omega(t, blk.mu1, blk.mu2);
    const std::complex<double> want =
        omega_oracle(t, std::complex<long double>(blk.mu1), std::complex<long double>(blk.mu2));
    EXPECT_NEAR(std::abs(got - want), 0.0, 1e-9 * std::max(1.0, std::abs(want))) << "t=" << t;
  }
}

TEST(Omega, MatchesBalancedBlockPowerProperty) {
  auto rng = testing::make_rng(33);
  for (int i = 0; i < 500; ++i) {
    const auto [a, b] = testing::stable_companion(rng);
    const ModalBlock blk = companion_block(a, b);
    const std::size_t t = 1 + static_cast<std::size_t>(testing::uniform(rng, 0.0, 60.0));
    const Mat2 pw = testing::brute_power(blk.matrix(), t);
    const std::complex<double> w = omega(t, blk.mu1, blk.mu2);
    EXPECT_NEAR(w.real(), pw.m00 + pw.m01, 1e-9 * std::max(1.0, std::abs(pw.m00) + std::abs(pw.m01)));
  }
}

TEST(BalancedResponse, Values) {
  // Slow mode alone: omega_2(1/2, 1/2) = 1 - 1/4. The fast mode adds 2mu - mu^2 at mu = -1/2.
  const AlgoParams hb = quad(Algorithm::kHeavyBall, 9.0);
  const auto slow = balanced_response(hb, Spectrum({1.0}), 3);
  EXPECT_EQ(slow[0], 1.0);
  EXPECT_NEAR(slow[1], 1.0, 1e-15);
  EXPECT_NEAR(slow[2], 0.75, 1e-14);
  EXPECT_NEAR(balanced_response(hb, Spectrum::extremes(1.0, 9.0), 3)[2], 1.25, 1e-14);

  for (double k : {10.0, 1e3, 1e5}) {
    const AlgoParams p = quad(Algorithm::kNesterov, k);
    for (double v : balanced_response(p, Spectrum::extremes(1.0, k), default_horizon(p.rho))) {
      EXPECT_LE(v, 3.0);
    }
  }
  const auto hb100 = balanced_response(quad(Algorithm::kHeavyBall, 100.0), Spectrum::extremes(1.0, 100.0), 60);
  EXPECT_GT(*std::max_element(hb100.begin(), hb100.end()), 1.0);
}

TEST(LinearGeometricPeak, Values) {
  const LinearGeometricPeak fast = linear_geometric_peak(0.2);
  EXPECT_EQ(fast.argmax, 1.0);
  EXPECT_EQ(fast.max, 0.2);
  const LinearGeometricPeak slow = linear_geometric_peak(0.9);
  double best = 0.0;
  double arg = 0.0;
  for (int i = 1000; i <= 30000; ++i) {
    const double t = i * 1e-3;
    if (t * std::pow(0.9, t) > best) {
      best = t * std::pow(0.9, t);
      arg = t;
    }
  }
  EXPECT_NEAR(slow.argmax, arg, 1e-3);
  EXPECT_NEAR(slow.max, best, 1e-8);
  EXPECT_EQ(code_of([] { linear_geometric_peak(1.0); }), ErrorCode::kInvalidArgument);
}

TEST(RateRatio, StartsAtOneAndIncreases) {
  for (double k : {10.0, 1e4}) {
    const auto r = balanced_mode_rate_ratio(k, 2000);
    EXPECT_NEAR(r[0], 1.0, 1e-15);
    for (std::size_t t = 1; t < r.size(); ++t) EXPECT_GT(r[t], r[t - 1]);
  }
}

TEST(RateRatio, MatchesIteratedSlowMode) {
  const double k = 50.0;
  const AlgoParams p = quad(Algorithm::kNesterov, k);
  const ModalBlock slow = build_blocks(p, Spectrum::extremes(1.0, k)).back();
  const auto r = balanced_mode_rate_ratio(k, 100);
  double x0 = 1.0;
  double x1 = 1.0;
  for (std::size_t t = 0; t <= 100; ++t) {
    const double want = std::hypot(x0, x1) / (std::pow(p.rho, static_cast<double>(t)) * std::numbers::sqrt2);
    EXPECT_NEAR(r[t], want, 1e-9 * want) << "t=" << t;
    const double next = slow.a * x0 + slow.b * x1;
    x0 = x1;
    x1 = next;
  }
}

TEST(WorstGain, GradientDescentIsOne) {
  const WorstGain j = worst_gain(quad(Algorithm::kGradientDescent, 1.0), Spectrum::extremes(1.0, 1.0));
  EXPECT_EQ(j.value, 1.0);
  EXPECT_EQ(worst_gain(quad(Algorithm::kGradientDescent, 100.0), Spectrum::extremes(1.0, 100.0)).value, 1.0);
}

TEST(WorstGain, HeavyBallKappa100InsidePeakBounds) {
  const WorstGain j = worst_gain(quad(Algorithm::kHeavyBall, 100.0), Spectrum::extremes(1.0, 100.0));
  const PeakBounds b = kappa_peak_bounds(100.0, Algorithm::kHeavyBall);
  EXPECT_TRUE(b.contains_peak(j.value)) << j.value;
  EXPECT_TRUE(b.contains_time(static_cast<double>(j.attaining_t)));
}

TEST(WorstGain, AtLeastOneOverRootTwoProperty) {
  auto rng = testing::make_rng(34);
  for (int i = 0; i < 100; ++i) {
    const double k = testing::log_uniform(rng, 1.5, 1e4);
    const Algorithm a = i % 2 ? Algorithm::kHeavyBall : Algorithm::kNesterov;
    const WorstGain j = worst_gain(quad(a, k), Spectrum::log_uniform(1.0, k, 5, rng));
    EXPECT_GE(j.value, 1.0 / std::numbers::sqrt2);
  }
}

TEST(DefaultHorizon, TailFallsBelowTenthOfPeak) {
  for (double k : {4.0, 100.0, 1e4, 1e6}) {
    for (Algorithm a : {Algorithm::kHeavyBall, Algorithm::kNesterov}) {
      const AlgoParams p = quad(a, k);
      const std::size_t T = default_horizon(p.rho);
      const TransientReport r = phi_curve(p, Spectrum::extremes(1.0, k), T);
      EXPECT_LT(r.phi_norm.back(), r.peak / 10.0) << to_string(a) << " " << k;
      EXPECT_LT(r.t_max, T);
    }
  }
  EXPECT_EQ(code_of([] { default_horizon(1.0); }), ErrorCode::kNotStable);
}

}  // namespace
}  // namespace accel
