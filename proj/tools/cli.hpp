#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mobnbody::cli {

// Runs one command line (args excludes the program name). Exit codes:
// 0 success, 1 domain error (singular, infeasible, no root), 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mobnbody::cli
