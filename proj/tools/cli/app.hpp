#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace accel::cli {

/// Environment variable naming the directory for outputs when --out is absent.
inline constexpr const char* kOutputDirEnv = "ACCEL_OUTPUT_DIR";

/// Full command line (args[0] is the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace accel::cli
