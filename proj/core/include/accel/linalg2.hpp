#pragma once

// Closed-form numerics for 2x2 real matrices. Modal blocks, Lyapunov
// matrices and reduced certificates are all 2x2, so none of this goes through
// a general eigensolver.

#include <array>
#include <utility>

namespace accel {

struct Mat2 {
  double m00 = 0.0;
  double m01 = 0.0;
  double m10 = 0.0;
  double m11 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  constexpr Mat2 transposed() const { return {m00, m10, m01, m11}; }
  constexpr double trace() const { return m00 + m11; }
  constexpr double det() const { return m00 * m11 - m01 * m10; }
  double max_abs() const;
};

Mat2 operator*(const Mat2& lhs, const Mat2& rhs);
Mat2 operator+(const Mat2& lhs, const Mat2& rhs);
Mat2 operator-(const Mat2& lhs, const Mat2& rhs);
Mat2 operator*(double s, const Mat2& m);
std::array<double, 2> operator*(const Mat2& m, const std::array<double, 2>& v);

/// Eigenvalues (smaller, larger) of the symmetric matrix [[a, c], [c, b]].
/// Uses the discriminant form that stays accurate when a ~ b and c ~ 0.
std::pair<double, double> symmetric_eigenvalues(double a, double b, double c);

/// Eigenvalues of the symmetric part of m, (smaller, larger).
std::pair<double, double> symmetric_eigenvalues(const Mat2& m);

/// Largest singular value, from the eigenvalues of the 2x2 Gram matrix.
double spectral_norm(const Mat2& m);

/// Euclidean norm of a 2-vector without intermediate overflow.
double norm2(double x, double y);

}  // namespace accel
