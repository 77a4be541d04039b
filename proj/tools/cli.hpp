// Command-line driver: encode, solve, enumerate and check.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsms::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 on success, 10/20 for a TRUE/FALSE verdict, 1 when check met unparsable
/// graphs, 2 for usage or input errors.
int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qsms::cli
