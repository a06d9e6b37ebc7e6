#pragma once

#include <string>
#include <variant>
#include <vector>

#include "output.hpp"
#include "run_config.hpp"

namespace accel::cli {

struct CommandResult {
  std::variant<Table, Record> body;
  int exit_code = 0;
  std::vector<std::string> warnings;
};

CommandResult cmd_transient(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_bounds(const RunConfig& cfg);
CommandResult cmd_balanced(const RunConfig& cfg);
CommandResult cmd_ratio_curve(const RunConfig& cfg);
CommandResult cmd_lmi_cert(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);

/// Dispatches on cfg.command (everything except verify-all).
CommandResult run_command(const RunConfig& cfg);

/// Renders the result in the config's output format.
std::string render(const CommandResult& result, const RunConfig& cfg);

}  // namespace accel::cli
