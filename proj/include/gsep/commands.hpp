#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsep::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,     // verdict negative: not a quantum state, entangled under PPT
  kMalformed = 2,  // unreadable input, schema violation, bad flags
  kInternal = 3,   // a verification stage missed its tolerance
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Reports go to `out`, diagnostics to `err`; a file argument "-" reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace gsep::cli
