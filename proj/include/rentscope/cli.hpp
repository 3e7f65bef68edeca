#pragma once

namespace rentscope::cli {

// Full subcommand dispatch. Returns the process exit code: 0 success,
// 1 usage problems, 2 data problems.
int run_command(int argc, const char* const* argv);

}  // namespace rentscope::cli
