#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "nlac_cli/config.hpp"

namespace nlac::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kNotConverged = 2,
  kInconclusive = 3,
  kCheckFailed = 4,
};

struct CommandContext {
  RunConfig config;
  std::optional<std::filesystem::path> profile;  ///< --profile
  std::ostream* out = nullptr;  ///< progress and summaries
  std::ostream* err = nullptr;  ///< error messages
};

/// Solves the layer and writes profile.csv and solve_report.txt.
int cmd_solve(const CommandContext& ctx);
/// Writes decay_fit.csv, energy_growth.csv and (s = 1/2) lambda_limit.csv.
int cmd_analyze(const CommandContext& ctx);
/// Writes reduction.txt and reduced_kernel.csv.
int cmd_reduce(const CommandContext& ctx);
/// Runs the N-to-1 identity check and writes identity_check.csv.
int cmd_verify(const CommandContext& ctx);

/// Entry point shared by the executable and the tests.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nlac::cli
