#pragma once

#include <iosfwd>

namespace hnn::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDataError = 2,
    kNotConverged = 3,
};

/// Runs the `hnn` command line. Output goes to `out`, diagnostics to `err`.
int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

} // namespace hnn::cli
