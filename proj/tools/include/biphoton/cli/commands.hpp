#pragma once

namespace biphoton::cli {

/// Parses argv and runs the selected subcommand.
/// Exit codes: 0 success, 2 usage error, 1 runtime error.
int dispatch(int argc, const char* const* argv);

} // namespace biphoton::cli
