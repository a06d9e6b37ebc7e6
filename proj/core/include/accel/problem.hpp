#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace accel {

enum class Algorithm { kGradientDescent, kHeavyBall, kNesterov };

/// Where (alpha, beta) come from.
///  - kGeneralConvex: conventional parameters valid for every f in F_m^L.
///  - kQuadraticOptimal: rate-optimal parameters for quadratics.
///  - kCustom: caller-supplied (alpha, beta); the rate is computed, not tabulated.
enum class ParamTable { kGeneralConvex, kQuadraticOptimal, kCustom };

std::string_view to_string(Algorithm algo);
std::string_view to_string(ParamTable table);
bool is_accelerated(Algorithm algo);

/// Hessian spectrum of a strongly convex quadratic, sorted non-increasing.
/// Coordinate i of every vector in the spectral basis pairs with eigenvalue i,
/// so index 0 carries L and the last index carries m.
class Spectrum {
 public:
  /// Throws kInvalidClass unless the values are strictly positive and
  /// sorted non-increasing.
  explicit Spectrum(std::vector<double> eigenvalues);

  /// Accepts either monotone order; rejects unordered input.
  static Spectrum from_monotone(std::vector<double> eigenvalues);
  /// The two-point spectrum {L, m}; a single eigenvalue when m == L.
  static Spectrum extremes(double m, double L);
  /// n eigenvalues log-uniform in [m, L] with both endpoints present (n >= 2).
  static Spectrum log_uniform(double m, double L, std::size_t n, std::mt19937_64& rng);

  std::span<const double> eigenvalues() const { return eigenvalues_; }
  std::size_t size() const { return eigenvalues_.size(); }
  double operator[](std::size_t i) const { return eigenvalues_[i]; }
  double L() const { return eigenvalues_.front(); }
  double m() const { return eigenvalues_.back(); }
  double kappa() const { return L() / m(); }

 private:
  std::vector<double> eigenvalues_;
};

/// Eigenvalues of the n x n symmetric tridiagonal Toeplitz matrix with 2 on
/// the diagonal and -1 off it: 2 - 2 cos(k pi / (n + 1)), k = 1..n.
Spectrum toeplitz_spectrum(std::size_t n);

struct AlgoParams {
  Algorithm algo = Algorithm::kGradientDescent;
  ParamTable table = ParamTable::kQuadraticOptimal;
  double alpha = 0.0;
  double beta = 0.0;
  /// Linear rate: tabulated for table rows, modal spectral radius for kCustom.
  double rho = 0.0;
  double kappa = 1.0;
  double m = 1.0;
  double L = 1.0;
};

/// Tabulated parameters for (algo, table). Heavy-ball has no general-convex
/// row (kUnsupportedCombination); m > L or m <= 0 gives kInvalidClass.
AlgoParams params_for(Algorithm algo, double m, double L, ParamTable table);

/// Gradient oracle for an m-strongly convex, L-smooth function.
struct Objective {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  double m = 1.0;
  double L = 1.0;
  Eigen::VectorXd minimizer;

  Eigen::Index dim() const { return minimizer.size(); }
};

/// f(x) = 1/2 (x - x*)^T Q (x - x*) with Q = diag(spectrum) in the spectral basis.
Objective make_quadratic(const Spectrum& spectrum, const Eigen::VectorXd& minimizer);

/// Separable non-quadratic member of F_m^L with minimizer 0 and f(0) = 0:
/// f(x) = m/2 |x|^2 + (L - m) sum_i h(x_i), h(s) = sqrt(1 + s^2) - 1.
/// h is convex with 0 < h'' <= 1, so m <= f'' <= L along every coordinate.
Objective make_pseudo_huber(double m, double L, Eigen::Index n);

struct MembershipReport {
  std::size_t pairs = 0;
  /// Most negative slack of the co-coercivity inequality, scaled by the
  /// size of its terms; >= -tolerance means every sampled pair passed.
  double worst_slack = 0.0;
  bool passed = true;
};

/// Spot-checks the interpolation (co-coercivity) inequality for F_m^L,
///   <g_x - g_y, x - y> >= mL/(m+L) |x - y|^2 + 1/(m+L) |g_x - g_y|^2,
/// on random pairs drawn from N(0, scale^2 I).
MembershipReport check_membership(const Objective& f, std::size_t pairs, double scale,
                                  std::mt19937_64& rng, double tolerance = 1e-10);

}  // namespace accel
