#include "app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "accel/error.hpp"
#include "accel/version.hpp"
#include "acceptance.hpp"
#include "commands.hpp"
#include "json.hpp"

namespace accel::cli {

namespace {

namespace fs = std::filesystem;

struct RawFlags {
  std::string algo;
  std::string table = "quadratic";
  std::string init = "balanced";
  std::string format;
  std::string x0;
  std::string x1;
  std::string kappas;
};

void add_spectrum_options(CLI::App* sub, RunConfig& cfg, RawFlags& raw) {
  sub->add_option("--algo", raw.algo, "gd | hb | na (default na)");
  sub->add_option("--table", raw.table, "general | quadratic | custom");
  sub->add_option("--alpha", cfg.alpha, "stepsize for --table custom");
  sub->add_option("--beta", cfg.beta, "momentum for --table custom");
  sub->add_option("--kappa", cfg.kappa, "condition number L/m (m defaults to 1)");
  sub->add_option("--m", cfg.m, "strong convexity constant");
  sub->add_option("--L", cfg.L, "smoothness constant");
  sub->add_option("--dim", cfg.dim, "eigenvalue count; > 2 samples log-uniform interior values");
  sub->add_option("--spectrum-file", cfg.spectrum_file, "file of Hessian eigenvalues");
  sub->add_option("--toeplitz", cfg.toeplitz, "spectrum of the n x n tridiagonal (2, -1) matrix");
  sub->add_option("-T", cfg.T, "number of rows, t = 0..T-1");
}

void add_output_options(CLI::App* sub, RunConfig& cfg, RawFlags& raw) {
  sub->add_option("--seed", cfg.seed, "random seed (recorded in the header)");
  sub->add_option("--out", cfg.out, "output file (default stdout or $" + std::string(kOutputDirEnv) + ")");
  sub->add_option("--format", raw.format, "csv | json");
}

std::string extension(OutputFormat f) { return f == OutputFormat::kJson ? ".json" : ".csv"; }

// Destination file, or empty for the provided stream.
std::string destination(const RunConfig& cfg) {
  const char* dir = std::getenv(kOutputDirEnv);
  if (cfg.out) {
    fs::path p(*cfg.out);
    if (p.is_relative() && dir && *dir) p = fs::path(dir) / p;
    return p.string();
  }
  if (dir && *dir) {
    return (fs::path(dir) / (std::string(to_string(cfg.command)) + extension(output_format(cfg)))).string();
  }
  return {};
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  const std::string path = destination(cfg);
  if (path.empty()) {
    out << text;
    return;
  }
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string verify_all_output(const std::vector<CriterionResult>& results, const RunConfig& cfg) {
  std::ostringstream os;
  HeaderFields meta = header_fields(cfg, nullptr, nullptr);
  meta.emplace_back("quick", cfg.quick ? "true" : "false");
  if (output_format(cfg) == OutputFormat::kJson) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : meta) j["meta"][k] = v;
    j["passed"] = all_passed(results);
    j["criteria"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      j["criteria"].push_back({{"id", r.id},
                               {"name", r.name},
                               {"status", r.status == Status::kPass   ? "pass"
                                          : r.status == Status::kFail ? "fail"
                                                                      : "skip"},
                               {"detail", r.detail}});
    }
    os << j.dump(2) << '\n';
  } else {
    write_header_comments(os, meta);
    os << render_report(results);
  }
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transient growth analysis of gradient descent, heavy-ball and Nesterov"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig cfg;
  RawFlags raw;
  struct Sub {
    Command cmd;
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {Command::kTransient, "transient", "worst-case gain |Phi(t)| on a quadratic"},
      {Command::kSimulate, "simulate", "run the method and record |x^t - x*|^2"},
      {Command::kBounds, "bounds", "peak, rise-time, Lyapunov and worst-gain bounds"},
      {Command::kBalanced, "balanced", "worst gain under x^1 = x^0"},
      {Command::kRatioCurve, "ratio-curve", "|psi^t|/|psi^0| against rho^t for the balanced slow mode"},
      {Command::kLmiCert, "lmi-cert", "closed-form certificate for Nesterov on the general class"},
      {Command::kSweep, "sweep", "peak statistics over a list of condition numbers"},
      {Command::kVerifyAll, "verify-all", "run every acceptance criterion"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->callback([&cfg, c = s.cmd] { cfg.command = c; });
    add_output_options(sub, cfg, raw);
    switch (s.cmd) {
      case Command::kVerifyAll:
        sub->add_flag("--quick", cfg.quick, "only condition numbers up to 1e3");
        break;
      case Command::kLmiCert:
        sub->add_option("--kappa", cfg.kappa, "condition number");
        sub->add_option("--m", cfg.m, "strong convexity constant (default 1)");
        sub->add_option("--theta2", cfg.theta2, "certificate scale (default 1)");
        break;
      case Command::kSweep:
        sub->add_option("--algo", raw.algo, "gd | hb | na");
        sub->add_option("--table", raw.table, "general | quadratic");
        sub->add_option("--m", cfg.m, "strong convexity constant");
        sub->add_option("--dim", cfg.dim, "eigenvalue count per point");
        sub->add_option("--kappas", raw.kappas, "comma-separated condition numbers");
        break;
      default:
        add_spectrum_options(sub, cfg, raw);
        if (s.cmd == Command::kSimulate) {
          sub->add_option("--init", raw.init, "balanced | antibalanced | worst | random | explicit");
          sub->add_option("--x0", raw.x0, "explicit x^0 in the eigenbasis, comma-separated");
          sub->add_option("--x1", raw.x1, "explicit x^1 (default x^0)");
        }
        break;
    }
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (!raw.algo.empty()) {
      cfg.algo = parse_algorithm(raw.algo);
      cfg.algo_given = true;
    }
    cfg.table = parse_table(raw.table);
    cfg.init = parse_init(raw.init);
    if (!raw.format.empty()) cfg.format = parse_format(raw.format);
    if (!raw.x0.empty()) cfg.x0 = parse_list(raw.x0);
    if (!raw.x1.empty()) cfg.x1 = parse_list(raw.x1);
    if (!raw.kappas.empty()) cfg.kappas = parse_list(raw.kappas);
    if ((!cfg.x0.empty() || !cfg.x1.empty()) && cfg.init != InitMode::kExplicit) {
      throw Error(ErrorCode::kInvalidArgument, "--x0/--x1 need --init explicit");
    }

    if (cfg.command == Command::kVerifyAll) {
      const auto results = run_acceptance({.quick = cfg.quick, .seed = cfg.seed == 0 ? 7 : cfg.seed});
      if (!destination(cfg).empty()) emit(verify_all_output(results, cfg), cfg, out);
      out << render_report(results);
      return all_passed(results) ? 0 : 1;
    }

    const CommandResult res = run_command(cfg);
    for (const auto& w : res.warnings) err << "warning: " << w << '\n';
    emit(render(res, cfg), cfg, out);
    return res.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace accel::cli
