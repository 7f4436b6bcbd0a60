#pragma once

// The ddsurf command line.  Every command prints one JSON report on the
// output stream; diagnostics go to the error stream.

#include <ostream>
#include <string>
#include <vector>

namespace ddsurf::cli {

enum ExitCode : int {
  affirmative = 0,   // verified, member, isomorphic, pass
  negative = 1,      // a sound negative answer with its disproof attached
  inconclusive = 2,  // no verdict within the configured limits or scope
  input_error = 3,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ddsurf::cli
