#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bgossip {

// Runs the command line (args excludes the program name). Returns 0 on
// success, 1 when a verification finds a mismatch or a solver fails, and 2 on
// invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bgossip
