#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace burstlink::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { ok = 0, runtime_error = 1, usage_error = 2 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace burstlink::cli
