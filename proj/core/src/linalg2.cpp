#include "accel/linalg2.hpp"

#include <algorithm>
#include <cmath>

namespace accel {

double Mat2::max_abs() const {
  return std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
}

Mat2 operator*(const Mat2& l, const Mat2& r) {
  return {l.m00 * r.m00 + l.m01 * r.m10, l.m00 * r.m01 + l.m01 * r.m11,
          l.m10 * r.m00 + l.m11 * r.m10, l.m10 * r.m01 + l.m11 * r.m11};
}

Mat2 operator+(const Mat2& l, const Mat2& r) {
  return {l.m00 + r.m00, l.m01 + r.m01, l.m10 + r.m10, l.m11 + r.m11};
}

Mat2 operator-(const Mat2& l, const Mat2& r) {
  return {l.m00 - r.m00, l.m01 - r.m01, l.m10 - r.m10, l.m11 - r.m11};
}

Mat2 operator*(double s, const Mat2& m) {
  return {s * m.m00, s * m.m01, s * m.m10, s * m.m11};
}

std::array<double, 2> operator*(const Mat2& m, const std::array<double, 2>& v) {
  return {m.m00 * v[0] + m.m01 * v[1], m.m10 * v[0] + m.m11 * v[1]};
}

double norm2(double x, double y) { return std::hypot(x, y); }

std::pair<double, double> symmetric_eigenvalues(double a, double b, double c) {
  const double mean = 0.5 * (a + b);
  const double radius = std::hypot(0.5 * (a - b), c);
  // The larger-magnitude root is formed without cancellation; the other one
  // comes from the determinant when that is better conditioned.
  double hi = mean + radius;
  double lo = mean - radius;
  const double det = a * b - c * c;
  if (mean > 0.0 && hi != 0.0) {
    lo = det / hi;
  } else if (mean < 0.0 && lo != 0.0) {
    hi = det / lo;
  }
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

std::pair<double, double> symmetric_eigenvalues(const Mat2& m) {
  return symmetric_eigenvalues(m.m00, m.m11, 0.5 * (m.m01 + m.m10));
}

double spectral_norm(const Mat2& m) {
  // Gram matrix G = M^T M is PSD; sigma_max^2 = lambda_max(G).
  const double g00 = m.m00 * m.m00 + m.m10 * m.m10;
  const double g11 = m.m01 * m.m01 + m.m11 * m.m11;
  const double g01 = m.m00 * m.m01 + m.m10 * m.m11;
  const auto [lo, hi] = symmetric_eigenvalues(g00, g11, g01);
  (void)lo;
  return std::sqrt(std::max(hi, 0.0));
}

}  // namespace accel
