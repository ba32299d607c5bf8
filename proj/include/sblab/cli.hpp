#pragma once

namespace sblab::cli {

/// Full command-line entry point (subcommand dispatch, config loading,
/// output emission). Returns the process exit code: 0 success, 2 config or
/// usage error, 3 numeric failure.
int run(int argc, const char* const* argv);

} // namespace sblab::cli
