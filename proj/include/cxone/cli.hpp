#pragma once

#include <iosfwd>

namespace cxone::cli {

/// Runs one command line. Reports go to `out` (or the --output file);
/// errors are written to `err` as {"code": ..., "message": ...}.
/// Exit codes: 0 success, 1 malformed input or usage, 2 domain error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cxone::cli
