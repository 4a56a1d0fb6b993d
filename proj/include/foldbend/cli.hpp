#pragma once

#include <iosfwd>

namespace foldbend::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 2,
    kNumericError = 3,
};

/// Runs one `foldbend` invocation. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace foldbend::cli
