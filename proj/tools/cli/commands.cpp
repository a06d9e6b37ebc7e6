#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "accel/dynamics.hpp"
#include "accel/error.hpp"
#include "accel/iqc.hpp"
#include "accel/lyapunov.hpp"
#include "accel/transient.hpp"

namespace accel::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double modal_rho(const AlgoParams& p, const Spectrum& s) {
  return modal_spectral_radius(build_blocks(p, s));
}

// Number of t samples beyond t = 0 to compute: T rows means t = 0..T-1.
std::size_t horizon(const RunConfig& cfg, const AlgoParams& p, const Spectrum& s) {
  if (cfg.T) {
    if (*cfg.T < 1) throw Error(ErrorCode::kInvalidArgument, "-T must be >= 1");
    return std::max<std::size_t>(*cfg.T - 1, 1);
  }
  return default_horizon(modal_rho(p, s));
}

std::size_t rows_for(const RunConfig& cfg, std::size_t h) { return cfg.T ? *cfg.T : h + 1; }

std::string interval(double lo, double hi) {
  return "[" + format_double(lo) + ", " + format_double(hi) + "]";
}

std::optional<PeakBounds> kappa_bounds_for(const AlgoParams& p) {
  if (p.table != ParamTable::kQuadraticOptimal || !is_accelerated(p.algo)) return std::nullopt;
  try {
    return kappa_peak_bounds(p.kappa, p.algo);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kOutOfValidityRange) throw;
    return std::nullopt;
  }
}

double kappa_of(const RunConfig& cfg) {
  if (cfg.kappa) return *cfg.kappa;
  if (cfg.m && cfg.L) return *cfg.L / *cfg.m;
  throw Error(ErrorCode::kInvalidArgument, "this command needs --kappa K or --m M --L L");
}

}  // namespace

CommandResult cmd_transient(const RunConfig& cfg) {
  const Spectrum s = resolve_spectrum(cfg);
  const AlgoParams p = resolve_params(cfg, s);
  const std::size_t h = horizon(cfg, p, s);
  const TransientReport rep = phi_curve(p, s, h);
  const std::size_t rows = std::min(rows_for(cfg, h), rep.t.size());

  std::size_t peak_row = 0;
  for (std::size_t i = 1; i < rows; ++i) {
    if (rep.phi_norm[i] > rep.phi_norm[peak_row]) peak_row = i;
  }

  Table t;
  t.meta = header_fields(cfg, &p, &s);
  t.meta.emplace_back("modal_rho", format_double(rep.modal_rho));
  t.meta.emplace_back("t_max", std::to_string(rep.t[peak_row]));
  t.meta.emplace_back("peak", format_double(rep.phi_norm[peak_row]));
  if (rep.bounds) {
    t.meta.emplace_back("rate_t_max_bounds", interval(rep.bounds->t_max_lo, rep.bounds->t_max_hi));
    t.meta.emplace_back("rate_peak_bounds", interval(rep.bounds->peak_lo, rep.bounds->peak_hi));
  }
  if (const auto kb = kappa_bounds_for(p)) {
    t.meta.emplace_back("kappa_t_max_bounds", interval(kb->t_max_lo, kb->t_max_hi));
    t.meta.emplace_back("kappa_peak_bounds", interval(kb->peak_lo, kb->peak_hi));
  }
  t.columns = {"t", "phi_norm", "theorem1_curve", "balanced_max", "peak"};
  for (std::size_t i = 0; i < rows; ++i) {
    t.rows.push_back({static_cast<double>(rep.t[i]), rep.phi_norm[i], rep.envelope[i],
                      rep.balanced_max[i], i == peak_row ? 1.0 : 0.0});
  }
  return {std::move(t), 0, {}};
}

CommandResult cmd_simulate(const RunConfig& cfg) {
  const Spectrum s = resolve_spectrum(cfg);
  const AlgoParams p = resolve_params(cfg, s);
  const std::size_t h = horizon(cfg, p, s);
  const std::size_t rows = rows_for(cfg, h);

  std::size_t tau = 1;
  if (cfg.init == InitMode::kWorst) tau = phi_curve(p, s, h).t_max;
  const InitialPair init = resolve_init(cfg, p, s, tau);
  const Objective f = make_quadratic(s, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.size())));
  const Trajectory tr = simulate(f, p, init.x0, init.x1, h, {.keep_iterates = false});

  const double e0 = tr.errors.front() * tr.errors.front();
  double peak = 0.0;
  std::size_t peak_t = 0;
  Table t;
  t.columns = {"t", "error_sq"};
  for (std::size_t i = 0; i < std::min(rows, tr.errors.size()); ++i) {
    const double e2 = tr.errors[i] * tr.errors[i];
    if (e2 > peak) {
      peak = e2;
      peak_t = i;
    }
    t.rows.push_back({static_cast<double>(i), e2});
  }
  t.meta = header_fields(cfg, &p, &s);
  if (cfg.init == InitMode::kWorst) t.meta.emplace_back("worst_tau", std::to_string(tau));
  t.meta.emplace_back("initial_error_sq", format_double(e0));
  t.meta.emplace_back("peak_error_sq", format_double(peak));
  t.meta.emplace_back("peak_t", std::to_string(peak_t));
  return {std::move(t), 0, {}};
}

CommandResult cmd_bounds(const RunConfig& cfg) {
  const Spectrum s = resolve_spectrum(cfg);
  const AlgoParams p = resolve_params(cfg, s);
  const std::size_t h = horizon(cfg, p, s);
  const TransientReport rep = phi_curve(p, s, h);

  Record r;
  r.meta = header_fields(cfg, &p, &s);
  r.add("rho", p.rho);
  r.add("modal_rho", rep.modal_rho);
  r.add("t_max", static_cast<double>(rep.t_max));
  r.add("peak", rep.peak);
  r.add("worst_block_lambda", s[rep.worst_block_index]);
  if (rep.bounds) {
    r.add("rate_t_max_lo", rep.bounds->t_max_lo);
    r.add("rate_t_max_hi", rep.bounds->t_max_hi);
    r.add("rate_peak_lo", rep.bounds->peak_lo);
    r.add("rate_peak_hi", rep.bounds->peak_hi);
    r.add("rate_bounds_hold",
          rep.bounds->contains_time(static_cast<double>(rep.t_max)) && rep.bounds->contains_peak(rep.peak));
  }
  if (const auto kb = kappa_bounds_for(p)) {
    r.add("kappa_t_max_lo", kb->t_max_lo);
    r.add("kappa_t_max_hi", kb->t_max_hi);
    r.add("kappa_peak_lo", kb->peak_lo);
    r.add("kappa_peak_hi", kb->peak_hi);
    r.add("kappa_bounds_hold",
          kb->contains_time(static_cast<double>(rep.t_max)) && kb->contains_peak(rep.peak));
  }
  if (is_accelerated(p.algo) && p.table == ParamTable::kQuadraticOptimal) {
    const StateTransitionBound sb = state_transition_bound(p.algo, p.kappa);
    r.add("lyapunov_bound", sb.exact);
    r.add("lyapunov_bound_asymptotic", sb.asymptotic);
  }
  const WorstGain j = worst_gain(p, s, h);
  r.add("worst_gain", j.value);
  r.add("worst_gain_t", static_cast<double>(j.attaining_t));
  if (p.algo == Algorithm::kNesterov && p.table == ParamTable::kGeneralConvex) {
    const WorstGainBounds jb = worst_gain_bounds(p.kappa);
    r.add("general_gain_lower", jb.lower);
    r.add("general_gain_upper", jb.upper);
  }
  const std::vector<double> bal = balanced_response(p, s, h);
  r.add("balanced_max", *std::max_element(bal.begin(), bal.end()));
  return {std::move(r), 0, {}};
}

CommandResult cmd_balanced(const RunConfig& cfg) {
  const Spectrum s = resolve_spectrum(cfg);
  const AlgoParams p = resolve_params(cfg, s);
  const std::size_t h = horizon(cfg, p, s);
  const std::size_t rows = rows_for(cfg, h);
  const std::vector<double> bal = balanced_response(p, s, h);
  const TransientReport rep = phi_curve(p, s, h);

  Table t;
  t.meta = header_fields(cfg, &p, &s);
  t.meta.emplace_back("balanced_max",
                      format_double(*std::max_element(bal.begin(), bal.end())));
  t.columns = {"t", "balanced_max", "phi_norm"};
  for (std::size_t i = 0; i < std::min(rows, bal.size()); ++i) {
    t.rows.push_back({static_cast<double>(i), bal[i], rep.phi_norm[i]});
  }
  return {std::move(t), 0, {}};
}

CommandResult cmd_ratio_curve(const RunConfig& cfg) {
  if (cfg.algo_given && cfg.algo != Algorithm::kNesterov) {
    throw Error(ErrorCode::kUnsupportedCombination,
                "ratio-curve follows the Nesterov balanced mode; use --algo na");
  }
  if (cfg.table != ParamTable::kQuadraticOptimal) {
    throw Error(ErrorCode::kUnsupportedCombination,
                "ratio-curve uses the quadratic-optimal parameters; use --table quadratic");
  }
  RunConfig c = cfg;
  c.algo = Algorithm::kNesterov;
  const Spectrum s = resolve_spectrum(c);
  const AlgoParams p = resolve_params(c, s);
  const std::size_t rows = cfg.T ? *cfg.T : 2001;
  if (rows < 1) throw Error(ErrorCode::kInvalidArgument, "-T must be >= 1");
  const std::vector<double> r = balanced_mode_rate_ratio(p.kappa, std::max<std::size_t>(rows - 1, 1));
  const double rho_hat = (9.0 * p.rho + 1.0) / 10.0;

  Table t;
  t.meta = header_fields(c, &p, &s);
  t.meta.emplace_back("rho_hat", format_double(rho_hat));
  t.columns = {"t", "ratio", "rho_t", "c_rho_hat_t"};
  for (std::size_t i = 0; i < rows; ++i) {
    const double rt = std::pow(p.rho, static_cast<double>(i));
    t.rows.push_back({static_cast<double>(i), r[i] * rt, rt,
                      5.0 * std::pow(rho_hat, static_cast<double>(i))});
  }
  return {std::move(t), 0, {}};
}

CommandResult cmd_lmi_cert(const RunConfig& cfg) {
  const double kappa = kappa_of(cfg);
  const double m = cfg.m.value_or(1.0);
  const IqcCertificate c = closed_form_certificate(kappa, m, cfg.theta2);
  const double k0 = simplified_bound_threshold();

  const Eigen::Matrix3d reduced =
      c.lmi + c.theta1 * Eigen::Vector3d(0.0, m * m * (2.0 * kappa - 1.0), 1.0).asDiagonal().toDenseMatrix();
  const double det_direct = c.x1 * c.x2 - c.x0 * c.x0;

  CommandResult out;
  Record r;
  r.meta = header_fields(cfg, nullptr, nullptr);
  r.add("kappa", c.kappa);
  r.add("m", c.m);
  r.add("L", c.L);
  r.add("alpha", c.alpha);
  r.add("beta", c.beta);
  r.add("x0", c.x0);
  r.add("x1", c.x1);
  r.add("x2", c.x2);
  r.add("theta1", c.theta1);
  r.add("theta2", c.theta2);
  r.add("lmi_residual", c.lmi_residual);
  r.add("coef_x0", c.coef_x0);
  r.add("coef_x1", c.coef_x1);
  r.add("bound_den", c.bound_den);
  r.add("lmi_norm", c.lmi_norm);
  r.add("reduced_lmi_deviation", reduced.cwiseAbs().maxCoeff());
  r.add("x_eig_min", c.x_eig_min);
  r.add("x_eig_max", c.x_eig_max);
  r.add("det_x", det_direct);
  r.add("det_x_closed_form", closed_form_det_x(kappa, m) * c.theta2 * c.theta2);
  r.add("w", c.w);
  r.add("cond_x_plus_kappa", c.x_eig_max / c.x_eig_min + kappa);
  r.add("kappa0", k0);
  r.add("simplified_bound", c.w <= 4.0 * kappa);
  r.add("feasible", c.feasible);
  out.body = std::move(r);

  if (kappa < k0) {
    std::ostringstream w;
    w << "kappa = " << format_double(kappa) << " is below " << format_double(k0)
      << ": the certificate gives coefficients (" << format_double(c.coef_x0) << ", "
      << format_double(c.coef_x1) << "), and the 4k/5k form does not follow (w = "
      << format_double(c.w) << " > 4k)";
    out.warnings.push_back(w.str());
  }
  if (!c.feasible) {
    out.warnings.push_back("certificate is infeasible at kappa = " + format_double(kappa) +
                           " (largest LMI eigenvalue " + format_double(c.lmi_residual) + ")");
    out.exit_code = 1;
  }
  return out;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  std::vector<double> kappas = cfg.kappas;
  if (kappas.empty()) kappas = {10.0, 100.0, 1e3, 1e4, 1e5};
  if (cfg.spectrum_file || cfg.toeplitz || cfg.kappa || cfg.L) {
    throw Error(ErrorCode::kInvalidArgument,
                "sweep takes its condition numbers from --kappas; drop other spectrum flags");
  }

  Table t;
  t.columns = {"kappa", "rho", "modal_rho", "t_max", "peak", "t_max_lo", "t_max_hi",
               "peak_lo", "peak_hi", "lyapunov_bound", "worst_gain", "balanced_max"};
  AlgoParams last;
  for (double k : kappas) {
    RunConfig c = cfg;
    c.kappa = k;
    const Spectrum s = resolve_spectrum(c);
    const AlgoParams p = resolve_params(c, s);
    last = p;
    const std::size_t h = default_horizon(modal_rho(p, s));
    const TransientReport rep = phi_curve(p, s, h);
    std::optional<PeakBounds> b = kappa_bounds_for(p);
    if (!b) b = rep.bounds;
    double lyap = kNaN;
    if (is_accelerated(p.algo) && p.table == ParamTable::kQuadraticOptimal) {
      lyap = state_transition_bound(p.algo, k).exact;
    }
    const std::vector<double> bal = balanced_response(p, s, h);
    t.rows.push_back({k, p.rho, rep.modal_rho, static_cast<double>(rep.t_max), rep.peak,
                      b ? b->t_max_lo : kNaN, b ? b->t_max_hi : kNaN, b ? b->peak_lo : kNaN,
                      b ? b->peak_hi : kNaN, lyap, worst_gain(p, s, h).value,
                      *std::max_element(bal.begin(), bal.end())});
  }
  t.meta = header_fields(cfg, nullptr, nullptr);
  t.meta.emplace(t.meta.begin() + 1, "algo", std::string(to_string(cfg.algo)));
  t.meta.emplace(t.meta.begin() + 2, "table", std::string(to_string(cfg.table)));
  t.meta.emplace(t.meta.begin() + 3, "table_row", table_row(last));
  return {std::move(t), 0, {}};
}

CommandResult run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::kTransient: return cmd_transient(cfg);
    case Command::kSimulate: return cmd_simulate(cfg);
    case Command::kBounds: return cmd_bounds(cfg);
    case Command::kBalanced: return cmd_balanced(cfg);
    case Command::kRatioCurve: return cmd_ratio_curve(cfg);
    case Command::kLmiCert: return cmd_lmi_cert(cfg);
    case Command::kSweep: return cmd_sweep(cfg);
    case Command::kVerifyAll: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "verify-all is not a data command");
}

std::string render(const CommandResult& result, const RunConfig& cfg) {
  std::ostringstream os;
  const OutputFormat fmt = output_format(cfg);
  if (const auto* t = std::get_if<Table>(&result.body)) write_table(os, *t, fmt);
  else write_record(os, std::get<Record>(result.body), fmt);
  return os.str();
}

}  // namespace accel::cli
