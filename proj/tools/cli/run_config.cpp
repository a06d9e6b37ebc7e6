#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "accel/dynamics.hpp"
#include "accel/error.hpp"
#include "accel/transient.hpp"
#include "accel/version.hpp"

namespace accel::cli {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); }

std::string spectrum_source(const RunConfig& cfg) {
  if (cfg.spectrum_file) return "file:" + *cfg.spectrum_file;
  if (cfg.toeplitz) return "toeplitz:" + std::to_string(*cfg.toeplitz);
  if (cfg.dim > 2) return "log-uniform:" + std::to_string(cfg.dim);
  return "extremes";
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::kTransient: return "transient";
    case Command::kSimulate: return "simulate";
    case Command::kBounds: return "bounds";
    case Command::kBalanced: return "balanced";
    case Command::kRatioCurve: return "ratio-curve";
    case Command::kLmiCert: return "lmi-cert";
    case Command::kSweep: return "sweep";
    case Command::kVerifyAll: return "verify-all";
  }
  return "?";
}

std::string_view to_string(InitMode m) {
  switch (m) {
    case InitMode::kBalanced: return "balanced";
    case InitMode::kAntibalanced: return "antibalanced";
    case InitMode::kWorst: return "worst";
    case InitMode::kRandom: return "random";
    case InitMode::kExplicit: return "explicit";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view s) {
  if (s == "gd") return Algorithm::kGradientDescent;
  if (s == "hb") return Algorithm::kHeavyBall;
  if (s == "na") return Algorithm::kNesterov;
  bad("unknown --algo '" + std::string(s) + "'; expected gd, hb or na");
}

ParamTable parse_table(std::string_view s) {
  if (s == "general") return ParamTable::kGeneralConvex;
  if (s == "quadratic") return ParamTable::kQuadraticOptimal;
  if (s == "custom") return ParamTable::kCustom;
  bad("unknown --table '" + std::string(s) + "'; expected general, quadratic or custom");
}

InitMode parse_init(std::string_view s) {
  if (s == "balanced") return InitMode::kBalanced;
  if (s == "antibalanced") return InitMode::kAntibalanced;
  if (s == "worst") return InitMode::kWorst;
  if (s == "random") return InitMode::kRandom;
  if (s == "explicit") return InitMode::kExplicit;
  bad("unknown --init '" + std::string(s) +
      "'; expected balanced, antibalanced, worst, random or explicit");
}

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  bad("unknown --format '" + std::string(s) + "'; expected csv or json");
}

std::vector<double> parse_list(std::string_view s) {
  std::istringstream is{std::string(s)};
  return read_values(is);
}

OutputFormat output_format(const RunConfig& cfg) {
  if (cfg.format) return *cfg.format;
  return cfg.command == Command::kLmiCert ? OutputFormat::kJson : OutputFormat::kCsv;
}

Spectrum resolve_spectrum(const RunConfig& cfg) {
  const bool pair = cfg.kappa || cfg.m || cfg.L;
  const int sources = int(pair) + int(cfg.spectrum_file.has_value()) + int(cfg.toeplitz.has_value());
  if (sources != 1) {
    bad("give exactly one spectrum source: --kappa K (optionally with --m), --m M --L L, "
        "--spectrum-file PATH or --toeplitz N");
  }
  if (cfg.spectrum_file) {
    std::ifstream in(*cfg.spectrum_file);
    if (!in) bad("cannot open spectrum file '" + *cfg.spectrum_file + "'");
    return Spectrum::from_monotone(read_values(in));
  }
  if (cfg.toeplitz) {
    if (*cfg.toeplitz < 1) bad("--toeplitz needs n >= 1");
    return toeplitz_spectrum(*cfg.toeplitz);
  }
  double m = cfg.m.value_or(1.0);
  double L = 0.0;
  if (cfg.kappa) {
    if (cfg.L) bad("--kappa and --L are exclusive; give --m with either");
    if (!(*cfg.kappa >= 1.0)) bad("--kappa must be >= 1");
    L = *cfg.kappa * m;
  } else {
    if (!cfg.m || !cfg.L) bad("--m and --L must be given together (or use --kappa)");
    L = *cfg.L;
  }
  if (!(m > 0.0) || !(L >= m)) throw Error(ErrorCode::kInvalidClass, "need 0 < m <= L");
  if (cfg.dim > 2) {
    std::mt19937_64 rng(cfg.seed);
    return Spectrum::log_uniform(m, L, cfg.dim, rng);
  }
  return Spectrum::extremes(m, L);
}

AlgoParams resolve_params(const RunConfig& cfg, const Spectrum& spectrum) {
  if (cfg.table == ParamTable::kCustom) {
    if (!cfg.alpha) bad("--table custom needs --alpha (and --beta for hb/na)");
    const double beta = cfg.beta.value_or(0.0);
    if (!is_accelerated(cfg.algo) && beta != 0.0) bad("--beta has no effect for gd");
    return custom_params(cfg.algo, *cfg.alpha, beta, spectrum);
  }
  if (cfg.alpha || cfg.beta) bad("--alpha/--beta require --table custom");
  return params_for(cfg.algo, spectrum.m(), spectrum.L(), cfg.table);
}

std::string table_row(const AlgoParams& p) {
  const bool quad = p.table == ParamTable::kQuadraticOptimal;
  switch (p.table) {
    case ParamTable::kCustom: return "custom alpha, beta; rho = modal spectral radius";
    case ParamTable::kGeneralConvex:
    case ParamTable::kQuadraticOptimal: break;
  }
  switch (p.algo) {
    case Algorithm::kGradientDescent:
      return quad ? "gd alpha=2/(L+m), rho=(k-1)/(k+1)"
                  : "gd alpha=1/L, rho=sqrt(1-2/(k+1))";
    case Algorithm::kHeavyBall:
      return "hb alpha=4/(sqrt(L)+sqrt(m))^2, beta=((sqrt(k)-1)/(sqrt(k)+1))^2, "
             "rho=(sqrt(k)-1)/(sqrt(k)+1)";
    case Algorithm::kNesterov:
      return quad ? "na alpha=4/(3L+m), beta=(k'-2)/(k'+2), rho=(k'-2)/k', k'=sqrt(3k+1)"
                  : "na alpha=1/L, beta=(sqrt(k)-1)/(sqrt(k)+1), rho=sqrt(1-1/sqrt(k))";
  }
  return "";
}

InitialPair resolve_init(const RunConfig& cfg, const AlgoParams& params,
                         const Spectrum& spectrum, std::size_t tau) {
  const auto n = static_cast<Eigen::Index>(spectrum.size());
  InitialPair ip{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  switch (cfg.init) {
    case InitMode::kBalanced:
      ip.x0.setConstant(1.0 / std::sqrt(static_cast<double>(n)));
      ip.x1 = ip.x0;
      break;
    case InitMode::kAntibalanced:
      // Unit error in the slowest mode with x^1 = -x^0.
      ip.x0(n - 1) = 1.0;
      ip.x1(n - 1) = -1.0;
      break;
    case InitMode::kWorst: {
      const WorstInitialState w = worst_initial_state(params, spectrum, std::max<std::size_t>(tau, 1));
      const auto i = static_cast<Eigen::Index>(w.block_index);
      ip.x0(i) = w.direction[0];
      ip.x1(i) = w.direction[1];
      break;
    }
    case InitMode::kRandom: {
      std::mt19937_64 rng(cfg.seed);
      std::normal_distribution<double> g;
      for (Eigen::Index i = 0; i < n; ++i) ip.x0(i) = g(rng);
      for (Eigen::Index i = 0; i < n; ++i) ip.x1(i) = g(rng);
      break;
    }
    case InitMode::kExplicit: {
      if (cfg.x0.empty()) bad("--init explicit needs --x0 (and optionally --x1, default x1 = x0)");
      const std::vector<double>& x1 = cfg.x1.empty() ? cfg.x0 : cfg.x1;
      if (cfg.x0.size() != spectrum.size() || x1.size() != spectrum.size()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "--x0/--x1 need " + std::to_string(spectrum.size()) + " entries (one per eigenvalue)");
      }
      ip.x0 = Eigen::Map<const Eigen::VectorXd>(cfg.x0.data(), n);
      ip.x1 = Eigen::Map<const Eigen::VectorXd>(x1.data(), n);
      break;
    }
  }
  if (!is_accelerated(params.algo)) ip.x1 = ip.x0;
  return ip;
}

HeaderFields header_fields(const RunConfig& cfg, const AlgoParams* params,
                           const Spectrum* spectrum) {
  HeaderFields h;
  h.emplace_back("command", std::string(to_string(cfg.command)));
  if (params) {
    h.emplace_back("algo", std::string(to_string(params->algo)));
    h.emplace_back("table", std::string(to_string(params->table)));
    h.emplace_back("table_row", table_row(*params));
    h.emplace_back("alpha", format_double(params->alpha));
    h.emplace_back("beta", format_double(params->beta));
    h.emplace_back("rho", format_double(params->rho));
    h.emplace_back("kappa", format_double(params->kappa));
    h.emplace_back("m", format_double(params->m));
    h.emplace_back("L", format_double(params->L));
  }
  if (spectrum) {
    h.emplace_back("spectrum", spectrum_source(cfg));
    h.emplace_back("n", std::to_string(spectrum->size()));
  }
  if (cfg.T) h.emplace_back("T", std::to_string(*cfg.T));
  if (cfg.command == Command::kSimulate) h.emplace_back("init", std::string(to_string(cfg.init)));
  h.emplace_back("seed", std::to_string(cfg.seed));
  h.emplace_back("version", kVersion);
  return h;
}

}  // namespace accel::cli
