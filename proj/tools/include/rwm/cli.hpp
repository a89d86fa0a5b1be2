#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rwm::cli {

enum ExitCode : int { ok = 0, data_error = 1, usage_error = 2 };

/// Runs one command line (args[0] is the program name). The artifact goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rwm::cli
