#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace accel::cli {

enum class Status { kPass, kFail, kSkip };

struct CriterionResult {
  int id = 0;
  std::string name;
  Status status = Status::kFail;
  std::string detail;
};

struct AcceptanceOptions {
  /// Restrict every sweep to kappa <= 1e3.
  bool quick = false;
  std::uint64_t seed = 7;
  /// Include the rerun-and-compare determinism criterion.
  bool determinism = true;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS  3 sqrt-kappa-scaling: ..." one line per criterion.
std::string render_line(const CriterionResult& r);
std::string render_report(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace accel::cli
