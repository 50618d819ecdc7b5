#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rfgap {

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfgap
