#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "accel/csv.hpp"
#include "accel/problem.hpp"

namespace accel::cli {

enum class Command {
  kTransient,
  kSimulate,
  kBounds,
  kBalanced,
  kRatioCurve,
  kLmiCert,
  kSweep,
  kVerifyAll,
};

enum class InitMode { kBalanced, kAntibalanced, kWorst, kRandom, kExplicit };
enum class OutputFormat { kCsv, kJson };

std::string_view to_string(Command c);
std::string_view to_string(InitMode m);

Algorithm parse_algorithm(std::string_view s);
ParamTable parse_table(std::string_view s);
InitMode parse_init(std::string_view s);
OutputFormat parse_format(std::string_view s);
/// Comma- or space-separated numbers.
std::vector<double> parse_list(std::string_view s);

struct RunConfig {
  Command command = Command::kTransient;
  Algorithm algo = Algorithm::kNesterov;
  bool algo_given = false;
  ParamTable table = ParamTable::kQuadraticOptimal;
  std::optional<double> alpha;
  std::optional<double> beta;

  // Spectrum sources; exactly one of kappa, (m, L), spectrum_file, toeplitz.
  std::optional<double> kappa;
  std::optional<double> m;
  std::optional<double> L;
  /// Log-uniform interior eigenvalues between m and L (seeded) when > 2.
  std::size_t dim = 2;
  std::optional<std::string> spectrum_file;
  std::optional<std::size_t> toeplitz;

  /// Rows emitted: t = 0..T-1. Unset picks a horizon past the peak.
  std::optional<std::size_t> T;
  InitMode init = InitMode::kBalanced;
  std::vector<double> x0;
  std::vector<double> x1;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  /// Unset: JSON for lmi-cert, CSV otherwise.
  std::optional<OutputFormat> format;

  double theta2 = 1.0;
  std::vector<double> kappas;
  bool quick = false;
};

OutputFormat output_format(const RunConfig& cfg);

/// Spectrum selected by the config; throws kInvalidArgument with a message
/// naming the flags when zero or several sources are given.
Spectrum resolve_spectrum(const RunConfig& cfg);

/// Tabulated or custom parameters for the resolved spectrum.
AlgoParams resolve_params(const RunConfig& cfg, const Spectrum& spectrum);

/// Human-readable formula of the table row behind the parameters.
std::string table_row(const AlgoParams& p);

struct InitialPair {
  Eigen::VectorXd x0;
  Eigen::VectorXd x1;
};

/// Initial condition in the spectral basis (minimizer at the origin).
/// `tau` is the target time of the worst mode.
InitialPair resolve_init(const RunConfig& cfg, const AlgoParams& params,
                         const Spectrum& spectrum, std::size_t tau);

/// command, parameters, table row, seed, artifact version.
HeaderFields header_fields(const RunConfig& cfg, const AlgoParams* params,
                           const Spectrum* spectrum);

}  // namespace accel::cli
