#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirac::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;   // a bound or round-trip threshold failed
inline constexpr int kExitValidation = 2;  // bad flags, files, windows, trivial spin
inline constexpr int kExitNumeric = 3;     // quadrature, budget or I/O failure

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` when the output path is "-", diagnostics and the machine-readable
/// error object to `err`. Thread count is read from DIRAC_THREADS.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirac::cli
