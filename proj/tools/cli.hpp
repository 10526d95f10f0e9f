#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mre::cli {

/// Full command-line entry point; args exclude the program name. Streams
/// stand in for stdout/stderr so tests can capture them.
/// Exit status: 0 success, 1 malformed input or usage, 2 infeasible or
/// degenerate problem (diagnostic on err, partial report on the output).
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace mre::cli
