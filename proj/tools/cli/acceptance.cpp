#include "acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "accel/dynamics.hpp"
#include "accel/error.hpp"
#include "accel/iqc.hpp"
#include "accel/lyapunov.hpp"
#include "accel/transient.hpp"
#include "commands.hpp"

namespace accel::cli {

namespace {

constexpr double kE = std::numbers::e;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::mt19937_64 rng_for(const AcceptanceOptions& o, int id) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(id)};
  return std::mt19937_64(seq);
}

std::vector<double> filter(std::vector<double> ks, const AcceptanceOptions& o) {
  if (o.quick) std::erase_if(ks, [](double k) { return k > 1e3; });
  return ks;
}

const Algorithm kAccelerated[] = {Algorithm::kHeavyBall, Algorithm::kNesterov};

// Stable companion block: complex pair, distinct real pair, or repeated root.
ModalBlock random_stable_block(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double kind = u(rng);
  if (kind < 0.4) {
    const double r = 0.05 + 0.949 * u(rng);
    const double th = 0.01 + (std::numbers::pi - 0.02) * u(rng);
    return companion_block(-r * r, 2.0 * r * std::cos(th));
  }
  if (kind < 0.8) {
    double z1 = 0.0, z2 = 0.0;
    do {
      z1 = -0.999 + 1.998 * u(rng);
      z2 = -0.999 + 1.998 * u(rng);
    } while (std::abs(z1 - z2) < 1e-3);
    return companion_block(-z1 * z2, z1 + z2);
  }
  const double z = -0.999 + 1.998 * u(rng);
  return companion_block(-z * z, 2.0 * z);
}

Spectrum log_grid(double m, double L, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = L * std::pow(m / L, s);
  }
  v.front() = L;
  v.back() = m;
  return Spectrum(std::move(v));
}

CriterionResult jordan_envelope_equality(const AcceptanceOptions& o) {
  CriterionResult r{1, "jordan-envelope-equality", Status::kPass, ""};
  double worst = 0.0;
  for (double k : filter({4.0, 10.0, 1e2, 1e3}, o)) {
    for (Algorithm a : kAccelerated) {
      const AlgoParams p = params_for(a, 1.0, k, ParamTable::kQuadraticOptimal);
      const TransientReport rep = phi_curve(p, Spectrum::extremes(1.0, k), 500);
      for (std::size_t t = 0; t <= 500; ++t) {
        const double env = jordan_envelope(p.rho, t);
        worst = std::max(worst, std::abs(rep.phi_norm[t] - env) / env);
      }
    }
  }
  if (!(worst <= 1e-9)) r.status = Status::kFail;
  r.detail = "max relative deviation " + fmt(worst) + " (tol 1e-9, t <= 500)";
  return r;
}

std::pair<double, double> peak_of(Algorithm a, double k) {
  const AlgoParams p = params_for(a, 1.0, k, ParamTable::kQuadraticOptimal);
  const TransientReport rep = phi_curve(p, Spectrum::extremes(1.0, k), default_horizon(p.rho));
  return {static_cast<double>(rep.t_max), rep.peak};
}

CriterionResult peak_containment(const AcceptanceOptions& o) {
  CriterionResult r{2, "peak-interval-containment", Status::kPass, ""};
  std::ostringstream d;
  for (Algorithm a : kAccelerated) {
    for (double k : filter({1e2, 1e3, 1e4}, o)) {
      const auto [tm, pk] = peak_of(a, k);
      const PeakBounds b = kappa_peak_bounds(k, a);
      const bool ok = b.contains_time(tm) && b.contains_peak(pk);
      if (!ok) r.status = Status::kFail;
      d << to_string(a) << "@" << fmt(k) << " t=" << tm << (ok ? "" : " OUT") << " peak="
        << fmt(pk) << "; ";
    }
  }
  r.detail = d.str();
  return r;
}

CriterionResult sqrt_kappa_scaling(const AcceptanceOptions& o) {
  CriterionResult r{3, "sqrt-kappa-scaling", Status::kPass, ""};
  if (o.quick) {
    r.status = Status::kSkip;
    r.detail = "needs kappa = 1e4";
    return r;
  }
  std::ostringstream d;
  for (Algorithm a : kAccelerated) {
    const double ratio = peak_of(a, 1e4).second / peak_of(a, 1e2).second;
    if (!(ratio >= 8.0 && ratio <= 12.5)) r.status = Status::kFail;
    d << to_string(a) << " ratio " << fmt(ratio) << "; ";
  }
  r.detail = d.str() + "window [8, 12.5]";
  return r;
}

CriterionResult block_power_oracle(const AcceptanceOptions& o) {
  CriterionResult r{4, "block-power-closed-form", Status::kPass, ""};
  auto rng = rng_for(o, 4);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const ModalBlock blk = random_stable_block(rng);
    const Mat2 M = blk.matrix();
    Mat2 P = Mat2::identity();
    for (std::size_t t = 1; t <= 200; ++t) {
      P = P * M;
      const Mat2 C = block_power(blk, t);
      const double scale = std::max(P.max_abs(), 1e-300);
      worst = std::max(worst, (C - P).max_abs() / scale);
    }
  }
  if (!(worst <= 1e-9)) r.status = Status::kFail;
  r.detail = "1000 blocks, t <= 200, max relative deviation " + fmt(worst) + " (tol 1e-9)";
  return r;
}

CriterionResult balanced_cap(const AcceptanceOptions& o) {
  CriterionResult r{5, "balanced-start-cap", Status::kPass, ""};
  auto rng = rng_for(o, 5);
  std::uniform_int_distribution<int> dim(2, 50);
  std::uniform_real_distribution<double> logk(0.0, o.quick ? 3.0 : 4.0);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(dim(rng));
    const double m = std::exp(g(rng));
    const double k = std::pow(10.0, logk(rng));
    const Spectrum s = Spectrum::log_uniform(m, k * m, n, rng);
    Eigen::VectorXd xs(static_cast<Eigen::Index>(n)), x0(static_cast<Eigen::Index>(n));
    for (auto& v : xs) v = g(rng);
    for (auto& v : x0) v = g(rng);
    const Objective f = make_quadratic(s, xs);
    // A random start plus starts along the extreme eigendirections, where the
    // modes with the largest balanced response live.
    Eigen::VectorXd e_hi = xs, e_lo = xs;
    e_hi(0) += 1.0;
    e_lo(static_cast<Eigen::Index>(n) - 1) += 1.0;
    for (ParamTable tab : {ParamTable::kGeneralConvex, ParamTable::kQuadraticOptimal}) {
      const AlgoParams p = params_for(Algorithm::kNesterov, m, k * m, tab);
      const std::size_t T = 2 * default_horizon(modal_spectral_radius(build_blocks(p, s)));
      for (const Eigen::VectorXd* start : {&x0, &e_hi, &e_lo}) {
        const Trajectory tr = simulate(f, p, *start, *start, T, {.keep_iterates = false});
        for (double e : tr.errors) worst = std::max(worst, e / tr.errors.front());
      }
    }
  }
  if (!(worst <= 3.0 + 1e-12)) r.status = Status::kFail;
  r.detail = "100 quadratics x 2 tables x 3 starts, max |x^t - x*| / |x^0 - x*| = " + fmt(worst) + " (cap 3)";
  return r;
}

CriterionResult omega_bounds(const AcceptanceOptions& o) {
  CriterionResult r{6, "balanced-response-bounds", Status::kPass, ""};
  auto rng = rng_for(o, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_complex = 0.0;
  double worst_real = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const double rad = u(rng);
    const double th = std::numbers::pi * u(rng);
    const std::complex<double> z = std::polar(rad, th);
    const double cap = 1.0 / std::abs(std::cos(th / 2.0)) + 1.0 / kE;
    const double z1 = -u(rng);
    const double z2 = u(rng);
    for (std::size_t t = 1; t <= 200; ++t) {
      worst_complex = std::max(worst_complex, std::abs(omega(t, z, std::conj(z))) / cap);
      worst_real = std::max(worst_real, std::abs(omega(t, z1, z2)) / 3.0);
    }
  }
  if (!(worst_complex <= 1.0 + 1e-12 && worst_real <= 1.0 + 1e-12)) r.status = Status::kFail;
  r.detail = "1e4 samples, t <= 200: max |omega|/cap complex " + fmt(worst_complex) + ", real " +
             fmt(worst_real);
  return r;
}

CriterionResult lyapunov_certificates(const AcceptanceOptions& o) {
  CriterionResult r{7, "lyapunov-state-transition", Status::kPass, ""};
  auto rng = rng_for(o, 7);
  double worst_res = -1.0;
  double min_p_eig = 1.0;
  for (int s = 0; s < 10000; ++s) {
    const ModalBlock blk = random_stable_block(rng);
    const LyapunovCertificate c = lyapunov_block(blk.a, blk.b);
    worst_res = std::max(worst_res, c.residual);
    min_p_eig = std::min(min_p_eig, symmetric_eigenvalues(c.P).first);
  }
  bool ok = worst_res <= 1e-10 && min_p_eig > 0.0;

  std::ostringstream d;
  d << "1e4 blocks: max residual " << fmt(worst_res) << ", min eig(P) " << fmt(min_p_eig) << "; ";
  for (Algorithm a : kAccelerated) {
    for (double k : {10.0, 1e2, 1e3}) {
      const AlgoParams p = params_for(a, 1.0, k, ParamTable::kQuadraticOptimal);
      std::mt19937_64 srng = rng_for(o, 70);
      const Spectrum s = Spectrum::log_uniform(1.0, k, 64, srng);
      const std::size_t T = 2 * default_horizon(p.rho);
      double sup = 0.0;
      for (const ModalBlock& blk : build_blocks(p, s)) {
        for (std::size_t t = 0; t <= T; ++t) sup = std::max(sup, spectral_norm(block_power(blk, t)));
      }
      const double bound = a == Algorithm::kHeavyBall ? std::sqrt(k) : std::sqrt(3.0 * k + 1.0) - 1.0;
      if (!(sup <= bound * (1.0 + 1e-8))) ok = false;
      d << to_string(a) << "@" << fmt(k) << " " << fmt(sup) << "/" << fmt(bound) << "; ";
    }
  }
  if (!ok) r.status = Status::kFail;
  r.detail = d.str();
  return r;
}

CriterionResult general_certificate(const AcceptanceOptions& o) {
  CriterionResult r{8, "general-class-certificate", Status::kPass, ""};
  const double k0 = simplified_bound_threshold();
  const double kmax = o.quick ? 1e3 : 1e6;
  bool ok = k0 <= 16.0;
  double worst_res = -1.0, worst_red = 0.0, worst_c0 = 0.0, worst_c1 = 0.0, min_x = 1.0;
  const int n = 40;
  for (int i = 0; i < n; ++i) {
    const double k = k0 * std::pow(kmax / k0, static_cast<double>(i) / (n - 1));
    const IqcCertificate c = closed_form_certificate(k);
    const Eigen::Matrix3d ref = -c.theta1 * Eigen::Vector3d(0.0, 2.0 * k - 1.0, 1.0).asDiagonal().toDenseMatrix();
    worst_res = std::max(worst_res, c.lmi_residual / c.lmi_norm);
    worst_red = std::max(worst_red, (c.lmi - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff());
    worst_c0 = std::max(worst_c0, c.coef_x0 / (4.0 * k));
    worst_c1 = std::max(worst_c1, c.coef_x1 / (5.0 * k));
    min_x = std::min(min_x, c.x_eig_min / c.x_eig_max);
    if (!c.feasible) ok = false;
  }
  ok = ok && worst_res <= 1e-8 && worst_red <= 1e-8 && worst_c0 <= 1.0 && worst_c1 <= 1.0 &&
       min_x >= 0.0;

  auto rng = rng_for(o, 8);
  double worst_traj = 0.0;
  int runs = 0;
  for (double k : filter({std::ceil(k0), 16.0, 1e2, 1e3, 1e4}, o)) {
    const Spectrum s = Spectrum::log_uniform(1.0, k, 8, rng);
    Eigen::VectorXd xs(8);
    std::normal_distribution<double> g;
    for (auto& v : xs) v = g(rng);
    const Objective quad = make_quadratic(s, xs);
    const Objective huber = make_pseudo_huber(1.0, k, 8);
    for (const Objective* f : {&quad, &huber}) {
      const GeneralBoundReport rep = verify_general_bound(*f, rng, {.trials = 10});
      worst_traj = std::max(worst_traj, rep.worst_simplified_ratio);
      ok = ok && rep.simplified_holds && rep.certificate_holds;
      ++runs;
    }
  }
  if (!ok) r.status = Status::kFail;
  r.detail = "kappa0 " + fmt(k0) + "; grid [kappa0, " + fmt(kmax) + "] max rel residual " +
             fmt(worst_res) + ", reduced-form deviation " + fmt(worst_red) +
             ", coef/4k " + fmt(worst_c0) + ", coef/5k " + fmt(worst_c1) + "; " +
             std::to_string(runs) + " oracle runs, max |x^t|^2/(4k|x0|^2+5k|x1|^2) " +
             fmt(worst_traj);
  return r;
}

CriterionResult worst_gain_sandwich(const AcceptanceOptions& o) {
  CriterionResult r{9, "worst-gain-sandwich", Status::kPass, ""};
  std::ostringstream d;
  for (double k : filter({1e2, 1e3, 1e4}, o)) {
    const AlgoParams p = params_for(Algorithm::kNesterov, 1.0, k, ParamTable::kGeneralConvex);
    const WorstGain j = worst_gain(p, log_grid(1.0, k, 401));
    const WorstGainBounds b = worst_gain_bounds(k);
    const bool in = j.value >= b.lower && j.value <= b.upper;
    if (!in) r.status = Status::kFail;
    d << "k=" << fmt(k) << " J=" << fmt(j.value) << " in [" << fmt(b.lower) << ", "
      << fmt(b.upper) << "]" << (in ? "" : " OUT") << "; ";
  }
  if (!o.quick) {
    const WorstGainBounds b = worst_gain_bounds(1e4);
    const double limit = kE * std::sqrt(5.0) / std::sqrt(2.0);
    const double ratio = b.upper / b.lower;
    if (!(std::abs(ratio / limit - 1.0) <= 0.05)) r.status = Status::kFail;
    d << "width ratio " << fmt(ratio) << " vs " << fmt(limit);
  }
  r.detail = d.str();
  return r;
}

CriterionResult figure1(const AcceptanceOptions&) {
  CriterionResult r{10, "antibalanced-transient", Status::kPass, ""};
  const double k = 1e3;
  const Spectrum s = Spectrum::extremes(1.0, k);
  const Objective f = make_quadratic(s, Eigen::VectorXd::Zero(2));
  const Eigen::VectorXd x0 = Eigen::Vector2d(0.0, 1.0);
  std::ostringstream d;
  for (Algorithm a : kAccelerated) {
    const AlgoParams p = params_for(a, 1.0, k, ParamTable::kQuadraticOptimal);
    const Trajectory tr = simulate(f, p, x0, -x0, 300, {.keep_iterates = false});
    std::size_t tp = 0;
    for (std::size_t t = 0; t < tr.errors.size(); ++t) {
      if (tr.errors[t] > tr.errors[tp]) tp = t;
    }
    const double gain = tr.errors[tp] * tr.errors[tp] / (tr.errors[0] * tr.errors[0]);
    if (!(gain > 100.0 && tp >= 14 && tp <= 30)) r.status = Status::kFail;
    d << to_string(a) << " peak error^2 " << fmt(gain) << " at t=" << tp << "; ";
  }
  const AlgoParams gd = params_for(Algorithm::kGradientDescent, 1.0, k, ParamTable::kQuadraticOptimal);
  const Trajectory tr = simulate(f, gd, x0, x0, 300, {.keep_iterates = false});
  bool mono = true;
  for (std::size_t t = 1; t < tr.errors.size(); ++t) mono = mono && tr.errors[t] <= tr.errors[t - 1];
  if (!mono) r.status = Status::kFail;
  d << "gd " << (mono ? "monotone" : "NOT monotone");
  r.detail = d.str();
  return r;
}

CriterionResult figure5(const AcceptanceOptions&) {
  CriterionResult r{11, "no-uniform-rate-constant", Status::kPass, ""};
  const std::vector<double> q = balanced_mode_rate_ratio(1e3, 10000);
  bool increasing = true;
  for (std::size_t t = 1; t < q.size(); ++t) increasing = increasing && q[t] > q[t - 1];
  std::size_t first = 0;
  for (std::size_t t = 0; t < q.size(); ++t) {
    if (q[t] > 10.0) {
      first = t;
      break;
    }
  }
  if (!increasing || first == 0) r.status = Status::kFail;
  r.detail = std::string(increasing ? "strictly increasing" : "NOT increasing") +
             ", exceeds 10 first at t=" + (first ? std::to_string(first) : std::string("never"));
  return r;
}

std::vector<CriterionResult> run_core(const AcceptanceOptions& o) {
  using Fn = std::function<CriterionResult(const AcceptanceOptions&)>;
  const std::pair<int, Fn> criteria[] = {
      {1, jordan_envelope_equality},   {2, peak_containment},     {3, sqrt_kappa_scaling},
      {4, block_power_oracle},  {5, balanced_cap},         {6, omega_bounds},
      {7, lyapunov_certificates}, {8, general_certificate}, {9, worst_gain_sandwich},
      {10, figure1},            {11, figure5},
  };
  std::vector<CriterionResult> out;
  for (const auto& [id, fn] : criteria) {
    try {
      out.push_back(fn(o));
    } catch (const std::exception& e) {
      out.push_back({id, "criterion-" + std::to_string(id), Status::kFail,
                     std::string("exception: ") + e.what()});
    }
  }
  return out;
}

std::string data_outputs(std::uint64_t seed) {
  std::string all;
  RunConfig sim;
  sim.command = Command::kSimulate;
  sim.algo = Algorithm::kHeavyBall;
  sim.kappa = 1e3;
  sim.dim = 20;
  sim.init = InitMode::kRandom;
  sim.seed = seed;
  all += render(run_command(sim), sim);
  RunConfig sweep;
  sweep.command = Command::kSweep;
  sweep.seed = seed;
  sweep.kappas = {10.0, 100.0, 1000.0};
  all += render(run_command(sweep), sweep);
  RunConfig cert;
  cert.command = Command::kLmiCert;
  cert.kappa = 100.0;
  cert.seed = seed;
  all += render(run_command(cert), cert);
  return all;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out = run_core(options);
  if (!options.determinism) return out;

  CriterionResult r{12, "determinism", Status::kPass, ""};
  try {
    const std::string first = render_report(out) + data_outputs(options.seed);
    const std::string second = render_report(run_core(options)) + data_outputs(options.seed);
    if (first != second) r.status = Status::kFail;
    r.detail = "report and data outputs (" + std::to_string(first.size()) + " bytes) " +
               (first == second ? "byte-identical" : "DIFFER") + " on rerun with seed " +
               std::to_string(options.seed);
  } catch (const std::exception& e) {
    r.status = Status::kFail;
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(r);
  return out;
}

std::string render_line(const CriterionResult& r) {
  const char* tag = r.status == Status::kPass ? "PASS" : r.status == Status::kFail ? "FAIL" : "SKIP";
  char head[64];
  std::snprintf(head, sizeof head, "%s %2d %s: ", tag, r.id, r.name.c_str());
  return head + r.detail;
}

std::string render_report(const std::vector<CriterionResult>& results) {
  std::string s;
  for (const auto& r : results) s += render_line(r) + "\n";
  return s;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const CriterionResult& r) { return r.status == Status::kFail; });
}

}  // namespace accel::cli
