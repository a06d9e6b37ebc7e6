#include "accel/iqc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "accel/dynamics.hpp"
#include "accel/error.hpp"

namespace accel {

namespace {

void check_class(double m, double L) {
  if (!(m > 0.0) || !(L >= m) || !std::isfinite(L)) {
    throw Error(ErrorCode::kInvalidClass, "need 0 < m <= L < inf");
  }
}

Eigen::Matrix2d symmetrized(const Eigen::Matrix2d& X) { return 0.5 * (X + X.transpose()); }

template <class S>
using Mat3 = Eigen::Matrix<S, 3, 3>;

// The certificate LMI with X = [[x1, x0], [x0, x2]], generic in the scalar so
// the closed-form point can be checked in extended precision: at large kappa
// the entries of X grow like L while the assembled matrix shrinks like
// 1/sqrt(kappa).
template <class S>
Mat3<S> lmi_matrix(S m, S L, S alpha, S beta, S x0, S x1, S x2, S theta1, S theta2) {
  using M2 = Eigen::Matrix<S, 2, 2>;
  using M23 = Eigen::Matrix<S, 2, 3>;
  const S one(1), zero(0);
  const S s = one - alpha * m;
  M23 AB;  // [A, B_u]
  AB << zero, one, zero, -beta * s, (one + beta) * s, -alpha;
  M23 I0 = M23::Zero();
  I0(0, 0) = one;
  I0(1, 1) = one;
  M23 E = M23::Zero();  // [C_y 0; 0 1]
  E(0, 0) = -beta;
  E(0, 1) = one + beta;
  E(1, 2) = one;
  M2 X;
  X << x1, x0, x0, x2;
  M2 pi;
  pi << zero, L - m, L - m, S(-2);
  M23 N1, N2;
  N1 << alpha * m * beta, -alpha * m * (one + beta), -alpha, -m * beta, m * (one + beta), one;
  N2 << -beta, beta, zero, -m * beta, m * (one + beta), one;
  M2 smooth, strong;
  smooth << L, one, one, zero;
  strong << -m, one, one, zero;
  const Mat3<S> Mdec = N1.transpose() * smooth * N1 + N2.transpose() * strong * N2;
  Mat3<S> out = AB.transpose() * X * AB - I0.transpose() * X * I0 +
                theta1 * (E.transpose() * pi * E) + theta2 * Mdec;
  return S(0.5) * (out + out.transpose()).eval();
}

template <class S>
LmiAssembly finish(const Mat3<S>& lmi) {
  Eigen::SelfAdjointEigenSolver<Mat3<S>> es(lmi, Eigen::EigenvaluesOnly);
  LmiAssembly out;
  out.matrix = lmi.template cast<double>();
  out.residual = static_cast<double>(es.eigenvalues().maxCoeff());
  out.norm = static_cast<double>(es.eigenvalues().cwiseAbs().maxCoeff());
  return out;
}

template <class S>
S p1_of(S r) {
  return (S(2) * r * r * r - S(4) * r * r + S(3) * r - S(1)) / (S(2) * r * r * r);
}

template <class S>
S p2_of(S r) {
  // 2r^5 - 4r^4 + 4r^2 - 2r = 2r (r - 1)^3 (r + 1)
  const S d = r - S(1);
  return (S(4) * r * r - S(3) * r + S(1)) / (S(2) * r * d * d * d * (r + S(1)));
}

}  // namespace

FeedbackRealization build_realization(double m, double L, double alpha, double beta) {
  check_class(m, L);
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be positive and finite");
  }
  FeedbackRealization r;
  r.m = m;
  r.L = L;
  r.alpha = alpha;
  r.beta = beta;
  const double s = 1.0 - alpha * m;
  r.A << 0.0, 1.0, -beta * s, (1.0 + beta) * s;
  r.B_u << 0.0, -alpha;
  r.C_z << 1.0, 0.0;
  r.C_y << -beta, 1.0 + beta;
  return r;
}

Eigen::Matrix2d sector_multiplier(double m, double L) {
  check_class(m, L);
  Eigen::Matrix2d pi;
  pi << 0.0, L - m, L - m, -2.0;
  return pi;
}

double sector_form(const Eigen::Matrix2d& pi, const Eigen::VectorXd& dy,
                   const Eigen::VectorXd& d_delta) {
  if (dy.size() != d_delta.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "sector_form operands differ in size");
  }
  return pi(0, 0) * dy.squaredNorm() + 2.0 * pi(0, 1) * dy.dot(d_delta) +
         pi(1, 1) * d_delta.squaredNorm();
}

DecreaseMatrix decrease_matrix(double m, double L, double alpha, double beta) {
  check_class(m, L);
  DecreaseMatrix d;
  // N1 eta = (x^{t+2} - y^t, grad f(y^t)), N2 eta = (y^t - x^{t+1}, grad f(y^t)).
  d.N1 << alpha * m * beta, -alpha * m * (1.0 + beta), -alpha,
      -m * beta, m * (1.0 + beta), 1.0;
  d.N2 << -beta, beta, 0.0,
      -m * beta, m * (1.0 + beta), 1.0;
  Eigen::Matrix2d smooth;
  smooth << L, 1.0, 1.0, 0.0;
  Eigen::Matrix2d strong;
  strong << -m, 1.0, 1.0, 0.0;
  d.M = d.N1.transpose() * smooth * d.N1 + d.N2.transpose() * strong * d.N2;
  return d;
}

double scalar_block_form(const Eigen::Matrix3d& S, const Eigen::VectorXd& v0,
                         const Eigen::VectorXd& v1, const Eigen::VectorXd& v2) {
  if (v0.size() != v1.size() || v0.size() != v2.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "scalar_block_form operands differ in size");
  }
  const Eigen::VectorXd* v[3] = {&v0, &v1, &v2};
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (S(i, j) != 0.0) acc += S(i, j) * v[i]->dot(*v[j]);
    }
  }
  return acc;
}

LmiAssembly assemble_lmi(const FeedbackRealization& real, const Eigen::Matrix2d& X,
                         double theta1, double theta2) {
  const Eigen::Matrix2d Xs = symmetrized(X);
  return finish(lmi_matrix<double>(real.m, real.L, real.alpha, real.beta, Xs(0, 1), Xs(0, 0),
                                   Xs(1, 1), theta1, theta2));
}

Eigen::Matrix2d IqcCertificate::X() const {
  Eigen::Matrix2d x;
  x << x1, x0, x0, x2;
  return x;
}

double closed_form_p1(double r) { return p1_of(r); }

double closed_form_p2(double r) { return p2_of(r); }

double closed_form_w(double kappa) {
  if (!(kappa > 1.0)) {
    throw Error(ErrorCode::kDegenerateCertificate, "closed-form certificate needs kappa > 1");
  }
  const double r = std::sqrt(kappa);
  return kappa * (2.0 + closed_form_p1(r) + kappa * closed_form_p2(r));
}

double closed_form_det_x(double kappa, double m) {
  if (!(kappa > 1.0)) {
    throw Error(ErrorCode::kDegenerateCertificate, "closed-form certificate needs kappa > 1");
  }
  const double r = std::sqrt(kappa);
  const double L = kappa * m;
  const double num = 12.0 * kappa * r - 17.0 * kappa + 9.0 * r - 2.0;
  const double den = 4.0 * kappa * r * (r - 1.0) * (r - 1.0) * (r + 1.0);
  return L * L * num / den;
}

IqcCertificate closed_form_certificate(double kappa, double m, double theta2) {
  if (!(m > 0.0) || !std::isfinite(m) || !(kappa >= 1.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::kInvalidClass, "need m > 0 and finite kappa >= 1");
  }
  if (kappa == 1.0) {
    throw Error(ErrorCode::kDegenerateCertificate,
                "closed-form certificate has a pole at kappa = 1");
  }
  if (!(theta2 > 0.0) || !std::isfinite(theta2)) {
    throw Error(ErrorCode::kInvalidArgument, "theta2 must be positive and finite");
  }
  using LD = long double;
  const LD mm = m;
  const LD th2 = theta2;
  const LD L = static_cast<LD>(kappa) * mm;
  const LD r = std::sqrt(static_cast<LD>(kappa));
  const LD alpha = LD(1) / L;
  const LD beta = (r - LD(1)) / (r + LD(1));
  const LD th1 = th2 * p2_of(r) / mm;
  const LD x0 = -L * th2;
  const LD x1 = L * th2 * p1_of(r);
  const LD x2 = L * L * th1 + L * th2;

  IqcCertificate c;
  c.kappa = kappa;
  c.m = m;
  c.L = static_cast<double>(L);
  c.alpha = static_cast<double>(alpha);
  c.beta = static_cast<double>(beta);
  c.theta2 = theta2;
  c.theta1 = static_cast<double>(th1);
  c.x0 = static_cast<double>(x0);
  c.x1 = static_cast<double>(x1);
  c.x2 = static_cast<double>(x2);

  const LmiAssembly lmi = finish(lmi_matrix<LD>(mm, L, alpha, beta, x0, x1, x2, th1, th2));
  c.lmi = lmi.matrix;
  c.lmi_residual = lmi.residual;
  c.lmi_norm = lmi.norm;

  const auto [lo, hi] = symmetric_eigenvalues(c.x1, c.x2, c.x0);
  c.x_eig_min = lo;
  c.x_eig_max = hi;
  c.bound_den = lo + m * theta2;
  c.w = (std::abs(c.x0) + std::abs(c.x1) + std::abs(c.x2)) / (m * theta2);
  c.feasible = lo > 0.0 && c.theta1 >= 0.0 && lmi.residual <= kLmiTolerance * lmi.norm;
  if (c.bound_den > 0.0) {
    c.coef_x0 = hi / c.bound_den;
    c.coef_x1 = (hi + c.L * theta2) / c.bound_den;
  } else {
    c.coef_x0 = c.coef_x1 = std::numeric_limits<double>::infinity();
  }
  return c;
}

double simplified_bound_threshold() {
  // g(r) = 2 + p1(r) + r^2 p2(r) - 4 falls through zero once on r > 1.
  auto g = [](double r) { return closed_form_p1(r) + r * r * closed_form_p2(r) - 2.0; };
  double lo = 1.0 + 1e-6;
  double hi = 100.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi * hi;
}

BoundCoefficients bound_coefficients(const Eigen::Matrix2d& X, double theta2, double m,
                                     double L) {
  check_class(m, L);
  const Eigen::Matrix2d Xs = symmetrized(X);
  const auto [lo, hi] = symmetric_eigenvalues(Xs(0, 0), Xs(1, 1), Xs(0, 1));
  const double den = lo + m * theta2;
  if (!(lo > 0.0) || !(den > 0.0)) {
    throw Error(ErrorCode::kInfeasibleCertificate, "X must be positive definite");
  }
  BoundCoefficients b;
  b.coef_x0 = hi / den;
  b.coef_x1 = (hi + L * theta2) / den;
  b.combined = hi / lo + L / m;
  return b;
}

BoundCoefficients transient_bound(const IqcCertificate& cert) {
  if (!cert.feasible) {
    throw Error(ErrorCode::kInfeasibleCertificate, "certificate does not satisfy the LMI");
  }
  return bound_coefficients(cert.X(), cert.theta2, cert.m, cert.L);
}

WorstGainBounds worst_gain_bounds(double kappa) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::kInvalidClass, "need finite kappa >= 1");
  }
  const double r = std::sqrt(kappa);
  return {std::sqrt(2.0) * (r - 1.0) * (r - 1.0) / (std::exp(1.0) * r), std::sqrt(5.0 * kappa)};
}

GeneralBoundReport verify_general_bound(const Objective& f, std::mt19937_64& rng,
                                        GeneralBoundOptions options) {
  const double m = f.m;
  const double L = f.L;
  check_class(m, L);
  const double kappa = L / m;
  const Eigen::Index n = f.dim();

  // Work in coordinates centred at the minimizer with f* = 0.
  const Eigen::VectorXd xs = f.minimizer;
  const double fs = f.value(xs);
  Objective g;
  g.m = m;
  g.L = L;
  g.minimizer = Eigen::VectorXd::Zero(n);
  g.value = [&f, xs, fs](const Eigen::VectorXd& x) { return f.value(x + xs) - fs; };
  g.gradient = [&f, xs](const Eigen::VectorXd& x) { return f.gradient(x + xs); };

  const MembershipReport mem = check_membership(g, options.membership_pairs,
                                                options.init_scale, rng);
  if (!mem.passed) {
    throw Error(ErrorCode::kNotInClass, "objective failed the sampled F_m^L membership check");
  }

  const AlgoParams p = params_for(Algorithm::kNesterov, m, L, ParamTable::kGeneralConvex);
  const DecreaseMatrix dec = decrease_matrix(m, L, p.alpha, p.beta);
  const Eigen::Matrix2d pi = sector_multiplier(m, L);

  // kappa = 1 has no closed-form certificate; the method then converges in one step.
  double coef_x0 = 1.0;
  double coef_x1 = 1.0;
  if (kappa > 1.0) {
    const IqcCertificate cert = closed_form_certificate(kappa, m);
    const BoundCoefficients bc = transient_bound(cert);
    coef_x0 = bc.coef_x0;
    coef_x1 = bc.coef_x1;
  }

  const std::size_t steps = options.steps != 0
                                ? options.steps
                                : static_cast<std::size_t>(20.0 * std::sqrt(kappa)) + 50;
  constexpr double kRelTol = 1e-9;

  GeneralBoundReport rep;
  rep.trials = options.trials;
  rep.steps = steps;
  std::normal_distribution<double> gauss(0.0, options.init_scale);
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    Eigen::VectorXd x0(n), x1(n);
    for (Eigen::Index i = 0; i < n; ++i) x0(i) = gauss(rng);
    for (Eigen::Index i = 0; i < n; ++i) x1(i) = gauss(rng);
    const Trajectory tr = simulate(g, p, x0, x1, steps);
    const double n0 = x0.squaredNorm();
    const double n1 = x1.squaredNorm();
    const double simple = 4.0 * kappa * n0 + 5.0 * kappa * n1;
    const double certified = coef_x0 * n0 + coef_x1 * n1;

    for (std::size_t t = 0; t < tr.iterates.size(); ++t) {
      const double e2 = tr.iterates[t].squaredNorm();
      if (simple > 0.0) rep.worst_simplified_ratio = std::max(rep.worst_simplified_ratio, e2 / simple);
      if (t >= 1 && certified > 0.0) {
        rep.worst_certificate_ratio = std::max(rep.worst_certificate_ratio, e2 / certified);
      }
    }

    // Shifting by the minimizer leaves absolute noise of order eps |x*| in
    // every oracle call, so the per-step inequalities are only meaningful
    // while the iterates stay well above that level.
    const double floor = 1e-6 * std::max(std::sqrt(n0 + n1), xs.norm());
    for (std::size_t t = 0; t + 2 < tr.iterates.size(); ++t) {
      const Eigen::VectorXd& xa = tr.iterates[t];
      const Eigen::VectorXd& xb = tr.iterates[t + 1];
      const Eigen::VectorXd y = (1.0 + p.beta) * xb - p.beta * xa;
      if (std::max({xa.norm(), xb.norm(), tr.iterates[t + 2].norm()}) < floor) break;
      const Eigen::VectorXd u = g.gradient(y) - m * y;
      ++rep.checked_steps;

      const double fa = g.value(tr.iterates[t + 2]);
      const double fb = g.value(xb);
      const double rhs = 0.5 * scalar_block_form(dec.M, xa, xb, u);
      const double scale = std::abs(fa) + std::abs(fb) + std::abs(rhs) +
                           std::numeric_limits<double>::min();
      rep.worst_decrease_violation =
          std::max(rep.worst_decrease_violation, (fa - fb - rhs) / scale);

      const double sec = sector_form(pi, y, u);
      const double sec_scale = (L - m) * y.squaredNorm() + u.squaredNorm() +
                               std::numeric_limits<double>::min();
      rep.worst_sector_violation = std::max(rep.worst_sector_violation, -sec / sec_scale);
    }
  }
  rep.simplified_holds = rep.worst_simplified_ratio <= 1.0 + kRelTol;
  rep.certificate_holds = rep.worst_certificate_ratio <= 1.0 + kRelTol &&
                          rep.worst_decrease_violation <= kRelTol &&
                          rep.worst_sector_violation <= kRelTol;
  return rep;
}

}  // namespace accel
