#pragma once

#include <ostream>

namespace ddeq {

/// Exit codes shared by every command.
enum ExitCode : int {
    kExitOk = 0,
    kExitError = 1,    // usage, parse, schema or I/O error; rejected input
    kExitFlagged = 2,  // ran to completion but the result is flagged (forced run, failed check)
};

/// Entry point of the ddeq command-line tool. Normal output goes to `out`,
/// diagnostics to `err`; files are written only when --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ddeq
