#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mahler::cli {

enum ExitCode : int {
  ok = 0,
  failure = 1,
  parse_error = 2,
  domain_error = 3,
  resource_error = 4,
};

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or the --out file); usage problems are reported on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Formats a double with 15 significant digits, the precision used in every
/// emitted artifact.
std::string format_number(double value);

}  // namespace mahler::cli
