#pragma once

#include <iosfwd>

namespace pencileig {

/// Entire command-line front end. Returns the process exit code: 0 on
/// success, 1 on usage, input or I/O errors, 2 when the solver fails.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pencileig
