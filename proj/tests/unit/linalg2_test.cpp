#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "accel/linalg2.hpp"
#include "generators.hpp"

namespace accel {
namespace {

Eigen::Matrix2d to_eigen(const Mat2& m) {
  Eigen::Matrix2d e;
  e << m.m00, m.m01, m.m10, m.m11;
  return e;
}

TEST(Linalg2, ProductsMatchEigen) {
  auto rng = testing::make_rng(1);
  for (int i = 0; i < 200; ++i) {
    const Mat2 a{testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2),
                 testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2)};
    const Mat2 b{testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2),
                 testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2)};
    const Eigen::Matrix2d ref = to_eigen(a) * to_eigen(b);
    EXPECT_NEAR((to_eigen(a * b) - ref).cwiseAbs().maxCoeff(), 0.0, 1e-14);
    EXPECT_NEAR(a.det(), to_eigen(a).determinant(), 1e-14);
  }
}

TEST(Linalg2, SymmetricEigenvaluesMatchEigen) {
  auto rng = testing::make_rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double a = testing::uniform(rng, -5, 5);
    const double b = testing::uniform(rng, -5, 5);
    const double c = testing::uniform(rng, -5, 5) * (i % 10 == 0 ? 1e-9 : 1.0);
    Eigen::Matrix2d m;
    m << a, c, c, b;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
    const auto [lo, hi] = symmetric_eigenvalues(a, b, c);
    EXPECT_NEAR(lo, es.eigenvalues()(0), 1e-12);
    EXPECT_NEAR(hi, es.eigenvalues()(1), 1e-12);
  }
}

TEST(Linalg2, RepeatedDiagonalHasNoSpuriousSplit) {
  const auto [lo, hi] = symmetric_eigenvalues(3.0, 3.0, 0.0);
  EXPECT_EQ(lo, 3.0);
  EXPECT_EQ(hi, 3.0);
}

TEST(Linalg2, SpectralNormMatchesSvd) {
  auto rng = testing::make_rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Mat2 a{testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3),
                 testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3)};
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(to_eigen(a));
    EXPECT_NEAR(spectral_norm(a), svd.singularValues()(0), 1e-12);
  }
}

TEST(Linalg2, SpectralNormOfRankOneRow) {
  EXPECT_DOUBLE_EQ(spectral_norm(Mat2{3.0, 4.0, 0.0, 0.0}), 5.0);
  EXPECT_DOUBLE_EQ(norm2(3e200, 4e200), 5e200);
}

}  // namespace
}  // namespace accel
