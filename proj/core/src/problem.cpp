#include "accel/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "accel/error.hpp"

namespace accel {

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kGradientDescent:
      return "gd";
    case Algorithm::kHeavyBall:
      return "hb";
    case Algorithm::kNesterov:
      return "na";
  }
  return "?";
}

std::string_view to_string(ParamTable table) {
  switch (table) {
    case ParamTable::kGeneralConvex:
      return "general";
    case ParamTable::kQuadraticOptimal:
      return "quadratic";
    case ParamTable::kCustom:
      return "custom";
  }
  return "?";
}

bool is_accelerated(Algorithm algo) { return algo != Algorithm::kGradientDescent; }

Spectrum::Spectrum(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.empty()) {
    throw Error(ErrorCode::kInvalidClass, "spectrum is empty");
  }
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    const double v = eigenvalues_[i];
    if (!std::isfinite(v) || v <= 0.0) {
      std::ostringstream os;
      os << "eigenvalue " << i << " = " << v << " is not strictly positive";
      throw Error(ErrorCode::kInvalidClass, os.str());
    }
    if (i > 0 && v > eigenvalues_[i - 1]) {
      std::ostringstream os;
      os << "eigenvalues must be sorted non-increasing (index " << i << ")";
      throw Error(ErrorCode::kInvalidClass, os.str());
    }
  }
}

Spectrum Spectrum::from_monotone(std::vector<double> eigenvalues) {
  if (std::is_sorted(eigenvalues.begin(), eigenvalues.end())) {
    std::reverse(eigenvalues.begin(), eigenvalues.end());
  }
  return Spectrum(std::move(eigenvalues));
}

Spectrum Spectrum::extremes(double m, double L) {
  if (!(m > 0.0) || !(L >= m)) {
    throw Error(ErrorCode::kInvalidClass, "need 0 < m <= L");
  }
  if (m == L) return Spectrum({L});
  return Spectrum({L, m});
}

Spectrum Spectrum::log_uniform(double m, double L, std::size_t n, std::mt19937_64& rng) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "log-uniform spectrum needs n >= 2");
  }
  if (!(m > 0.0) || !(L >= m)) {
    throw Error(ErrorCode::kInvalidClass, "need 0 < m <= L");
  }
  std::uniform_real_distribution<double> u(std::log(m), std::log(L));
  std::vector<double> values;
  values.reserve(n);
  values.push_back(L);
  values.push_back(m);
  for (std::size_t i = 2; i < n; ++i) values.push_back(std::clamp(std::exp(u(rng)), m, L));
  std::sort(values.begin(), values.end(), std::greater<>());
  return Spectrum(std::move(values));
}

Spectrum toeplitz_spectrum(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "toeplitz dimension must be >= 1");
  std::vector<double> values(n);
  const double h = std::numbers::pi / static_cast<double>(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    // 2 - 2cos(x) = 4 sin^2(x/2) keeps the small eigenvalues accurate.
    const double s = std::sin(0.5 * h * static_cast<double>(k));
    values[n - k] = 4.0 * s * s;
  }
  return Spectrum(std::move(values));
}

AlgoParams params_for(Algorithm algo, double m, double L, ParamTable table) {
  if (!(m > 0.0) || !std::isfinite(L) || m > L) {
    std::ostringstream os;
    os << "need 0 < m <= L, got m = " << m << ", L = " << L;
    throw Error(ErrorCode::kInvalidClass, os.str());
  }
  AlgoParams p;
  p.algo = algo;
  p.table = table;
  p.m = m;
  p.L = L;
  p.kappa = L / m;
  const double k = p.kappa;
  const double r = std::sqrt(k);

  switch (table) {
    case ParamTable::kGeneralConvex:
      switch (algo) {
        case Algorithm::kGradientDescent:
          p.alpha = 1.0 / L;
          p.rho = std::sqrt(1.0 - 2.0 / (k + 1.0));
          return p;
        case Algorithm::kNesterov:
          p.alpha = 1.0 / L;
          p.beta = (r - 1.0) / (r + 1.0);
          p.rho = std::sqrt(1.0 - 1.0 / r);
          return p;
        case Algorithm::kHeavyBall:
          throw Error(ErrorCode::kUnsupportedCombination,
                      "heavy-ball does not offer acceleration guarantees for all f in F_m^L; "
                      "use the quadratic table");
      }
      break;
    case ParamTable::kQuadraticOptimal:
      switch (algo) {
        case Algorithm::kGradientDescent:
          p.alpha = 2.0 / (L + m);
          p.rho = (k - 1.0) / (k + 1.0);
          return p;
        case Algorithm::kNesterov: {
          const double kp = std::sqrt(3.0 * k + 1.0);
          p.alpha = 4.0 / (3.0 * L + m);
          p.beta = (kp - 2.0) / (kp + 2.0);
          p.rho = (kp - 2.0) / kp;
          return p;
        }
        case Algorithm::kHeavyBall: {
          const double sl = std::sqrt(L) + std::sqrt(m);
          const double q = (r - 1.0) / (r + 1.0);
          p.alpha = 4.0 / (sl * sl);
          p.beta = q * q;
          p.rho = q;
          return p;
        }
      }
      break;
    case ParamTable::kCustom:
      throw Error(ErrorCode::kInvalidArgument,
                  "custom parameters carry a computed rate; use custom_params()");
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm/table");
}

Objective make_quadratic(const Spectrum& spectrum, const Eigen::VectorXd& minimizer) {
  if (static_cast<std::size_t>(minimizer.size()) != spectrum.size()) {
    std::ostringstream os;
    os << "minimizer has dimension " << minimizer.size() << " but spectrum has "
       << spectrum.size() << " eigenvalues";
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  const Eigen::VectorXd q =
      Eigen::Map<const Eigen::VectorXd>(spectrum.eigenvalues().data(),
                                        static_cast<Eigen::Index>(spectrum.size()));
  Objective f;
  f.m = spectrum.m();
  f.L = spectrum.L();
  f.minimizer = minimizer;
  f.value = [q, minimizer](const Eigen::VectorXd& x) {
    const Eigen::VectorXd e = x - minimizer;
    return 0.5 * e.dot(q.cwiseProduct(e));
  };
  f.gradient = [q, minimizer](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return q.cwiseProduct(x - minimizer);
  };
  return f;
}

Objective make_pseudo_huber(double m, double L, Eigen::Index n) {
  if (!(m > 0.0) || m > L) throw Error(ErrorCode::kInvalidClass, "need 0 < m <= L");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
  const double c = L - m;
  Objective f;
  f.m = m;
  f.L = L;
  f.minimizer = Eigen::VectorXd::Zero(n);
  f.value = [m, c](const Eigen::VectorXd& x) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      // sqrt(1 + s^2) - 1 written without cancellation for small s.
      const double s2 = x[i] * x[i];
      h += s2 / (std::sqrt(1.0 + s2) + 1.0);
    }
    return 0.5 * m * x.squaredNorm() + c * h;
  };
  f.gradient = [m, c](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      g[i] = m * x[i] + c * x[i] / std::sqrt(1.0 + x[i] * x[i]);
    }
    return g;
  };
  return f;
}

MembershipReport check_membership(const Objective& f, std::size_t pairs, double scale,
                                  std::mt19937_64& rng, double tolerance) {
  MembershipReport report;
  report.pairs = pairs;
  std::normal_distribution<double> normal(0.0, scale);
  const Eigen::Index n = f.dim();
  const double m = f.m;
  const double L = f.L;
  Eigen::VectorXd x(n), y(n);
  for (std::size_t k = 0; k < pairs; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = f.minimizer[i] + normal(rng);
      y[i] = f.minimizer[i] + normal(rng);
    }
    const Eigen::VectorXd dx = x - y;
    const Eigen::VectorXd dg = f.gradient(x) - f.gradient(y);
    const double lhs = dg.dot(dx);
    const double rhs = (m * L * dx.squaredNorm() + dg.squaredNorm()) / (m + L);
    const double size = std::abs(lhs) + std::abs(rhs);
    const double slack = size > 0.0 ? (lhs - rhs) / size : 0.0;
    report.worst_slack = k == 0 ? slack : std::min(report.worst_slack, slack);
  }
  report.passed = report.worst_slack >= -tolerance;
  return report;
}

}  // namespace accel
