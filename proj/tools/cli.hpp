// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cdiv::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kAssertionFailed = 1, kUsageError = 2 };

/// Runs one invocation. `args` excludes the program name. Human-readable
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdiv::cli
